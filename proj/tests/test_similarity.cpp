// Copyright 2026 The greduce Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <string>

#include "greduce/cases.hpp"
#include "greduce/similarity.hpp"

using namespace greduce;

TEST_CASE("similarity of identical and disjoint strings") {
  CHECK(similarity_ratio("abc", "abc") == 1.0);
  CHECK(similarity_ratio("", "") == 1.0);
  CHECK(similarity_ratio("a", "") == 0.0);
  CHECK(similarity_ratio("abc", "xyz") == 0.0);
}

TEST_CASE("similarity of overlapping strings") {
  // Longest match "bcd" (3 chars), total length 8: 2*3/8.
  CHECK(similarity_ratio("abcd", "bcde") == 0.75);
  SUBCASE("symmetry") {
    CHECK(similarity_ratio("bcde", "abcd") == 0.75);
    for (auto [a, b] : {std::pair<std::string, std::string>{"hello", "help"},
                        {"xaxbxc", "abc"},
                        {"reduction", "production"}}) {
      CHECK(similarity_ratio(a, b) == similarity_ratio(b, a));
    }
  }
}

TEST_CASE("matching recurses on both sides of the longest block") {
  // "ab" + "zz" + "cd" vs "ab" + "qq" + "cd": blocks "ab" and "cd".
  CHECK(similarity_ratio("abzzcd", "abqqcd") == doctest::Approx(8.0 / 12.0));
}

TEST_CASE("the crash oracle accepts at the threshold and rejects below") {
  // 80 shared + 20 disjoint characters on each side: ratio 160/200 = 0.8.
  std::string expected = std::string(80, 'c') + std::string(20, 'x');
  std::string at = std::string(80, 'c') + std::string(20, 'y');
  // 79 shared + 21 disjoint: ratio 158/200 = 0.79.
  std::string expected79 = std::string(79, 'c') + std::string(21, 'x');
  std::string below = std::string(79, 'c') + std::string(21, 'y');

  CHECK(similarity_ratio(expected, at) == 0.8);
  CHECK(similarity_ratio(expected79, below) == doctest::Approx(0.79));

  auto oracle = crash_oracle(SimilaritySpec{expected, 0.8});
  CHECK(oracle(expected));  // identical
  CHECK(oracle(at));        // exactly at the threshold
  auto oracle79 = crash_oracle(SimilaritySpec{expected79, 0.8});
  CHECK_FALSE(oracle79(below));
}

TEST_CASE("the expression case's message variants stay above the threshold") {
  const CaseSpec& spec = find_case("expr");
  auto fixture = record_execution(spec.generator, spec.name, spec.fixture_seed);
  auto original = expr_crash_message(fixture.second.text);
  REQUIRE(original.has_value());
  // A reduced input crashes with different operand values; the fixed
  // message prefix keeps such variants above 0.8.
  std::string variant = "evaluator fault: double-negated quotient (lhs=3, rhs=9)";
  CHECK(similarity_ratio(*original, variant) >= 0.8);
}
