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

#include "greduce/baselines.hpp"
#include "greduce/cases.hpp"

using namespace greduce;

TEST_CASE("token views reassemble their input") {
  TokenView chars = TokenView::chars("abc\nabc\n");
  std::vector<size_t> all{0, 1, 2, 3, 4, 5, 6, 7};
  CHECK(chars.assemble(all) == "abc\nabc\n");

  TokenView lines = TokenView::lines("a\nbb\nccc\n");
  REQUIRE(lines.tokens.size() == 3);
  CHECK(lines.assemble({0, 1, 2}) == "a\nbb\nccc\n");
  CHECK(lines.assemble({0, 2}) == "a\nccc\n");
  CHECK(lines.assemble({}).empty());
}

TEST_CASE("raw ddmin cannot reduce the duplicated-password input") {
  const CaseSpec& spec = find_case("password");
  auto input = bare_execution(spec.generator, spec.fixture_seed);
  REQUIRE(input.text == "abc\nabc\n");
  RawDdminParams params;
  params.property = [&spec](const std::string& bytes) {
    return spec.property(GeneratedInput{
        bytes, SizeMeasure::scalar(static_cast<std::int64_t>(bytes.size()))});
  };
  params.validity = [&spec](const std::string& bytes) {
    return spec.validity(GeneratedInput{
        bytes, SizeMeasure::scalar(static_cast<std::int64_t>(bytes.size()))});
  };
  BaselineResult r = raw_ddmin(input.text, TokenView::chars(input.text), params);
  // No character subsequence shorter than the whole keeps both halves
  // equal and the 'c' present, so the original survives untouched.
  CHECK(r.reduced_bytes == input.text);
  CHECK(r.metrics.validity_rate < 1.0);
}

TEST_CASE("raw ddmin reduces an unconstrained property to one token") {
  RawDdminParams params;
  params.property = [](const std::string& bytes) { return !bytes.empty(); };
  BaselineResult r = raw_ddmin("hello", TokenView::chars("hello"), params);
  CHECK(r.reduced_bytes.size() == 1);
}

TEST_CASE("raw ddmin on the graph case measures partial validity") {
  const CaseSpec& spec = find_case("digraph");
  auto input = bare_execution(spec.generator, spec.fixture_seed);
  RawDdminParams params;
  auto wrap = [](const std::string& bytes) {
    return GeneratedInput{bytes,
                          SizeMeasure::scalar(static_cast<std::int64_t>(bytes.size()))};
  };
  params.property = [&](const std::string& bytes) {
    return spec.validity(wrap(bytes)) && spec.property(wrap(bytes));
  };
  params.validity = [&](const std::string& bytes) {
    return spec.validity(wrap(bytes));
  };
  BaselineResult r = raw_ddmin(input.text, TokenView::lines(input.text), params);
  CHECK(r.metrics.validity_rate < 1.0);
  CHECK(r.metrics.validity_rate >= 0.0);
  CHECK(params.property(r.reduced_bytes));
  CHECK(r.reduced_bytes.size() <= input.text.size());
}

TEST_CASE("choice replay with the full sequence reproduces the original") {
  for (const char* name : {"password", "digraph", "expr", "nested"}) {
    const CaseSpec& spec = find_case(name);
    auto [trace, input] = record_execution(spec.generator, spec.name,
                                           spec.fixture_seed);
    ChoiceShrinkParams params;
    params.property = [&input](const GeneratedInput& in) {
      return in.text == input.text;  // only the original passes
    };
    BaselineResult r = choice_delete_shrink(spec.generator, trace, params);
    CHECK(r.reduced_input.text == input.text);
  }
}

TEST_CASE("choice deletion shrinks the password while keeping the bug") {
  const CaseSpec& spec = find_case("password");
  auto [trace, input] = record_execution(spec.generator, spec.name,
                                         spec.fixture_seed);
  ChoiceShrinkParams params;
  params.property = spec.property;
  params.fresh_seed = 8;
  BaselineResult r = choice_delete_shrink(spec.generator, trace, params);
  CHECK(r.reduced_input.text.find('c') != std::string::npos);
  CHECK(r.reduced_input.text.size() <= input.text.size());
  CHECK(spec.validity(r.reduced_input));
}

TEST_CASE("every choice-deletion candidate is a generator output") {
  // The property records every candidate it sees; all must be valid.
  const CaseSpec& spec = find_case("digraph");
  auto [trace, input] = record_execution(spec.generator, spec.name,
                                         spec.fixture_seed);
  int invalid = 0;
  ChoiceShrinkParams params;
  params.property = [&](const GeneratedInput& in) {
    if (!spec.validity(in)) ++invalid;
    return spec.property(in);
  };
  choice_delete_shrink(spec.generator, trace, params);
  CHECK(invalid == 0);
}

TEST_CASE("flat choice deletion needs more tests than tree search on nested input") {
  const CaseSpec& spec = find_case("nested");
  auto [trace, input] = record_execution(spec.generator, spec.name,
                                         spec.fixture_seed);
  ChoiceShrinkParams params;
  params.property = spec.property;
  params.fresh_seed = spec.fixture_seed;
  BaselineResult flat = choice_delete_shrink(spec.generator, trace, params);

  SearchConfig cfg;
  cfg.search = SearchKind::TreeHdd;
  cfg.strategy = AlignmentStrategy::Realign;
  cfg.realign_seed = spec.fixture_seed;
  ReductionResult tree = greduce::greduce(spec.generator, spec.name,
                                          spec.fixture_seed, spec.property,
                                          cfg, spec.validity, spec.size_fn);
  CHECK(flat.metrics.property_tests > tree.metrics.property_tests);
}
