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

#include "greduce/similarity.hpp"

#include <cstddef>
#include <vector>

namespace greduce {

namespace {

struct Block {
  std::size_t a = 0, b = 0, size = 0;
};

// Longest common substring of a[alo..ahi) and b[blo..bhi); ties prefer the
// earliest position in a, then in b.
Block longest_match(const std::string& a, std::size_t alo, std::size_t ahi,
                    const std::string& b, std::size_t blo, std::size_t bhi) {
  Block best{alo, blo, 0};
  if (alo >= ahi || blo >= bhi) return best;
  const std::size_t width = bhi - blo;
  std::vector<std::size_t> prev(width, 0), cur(width, 0);
  for (std::size_t i = alo; i < ahi; ++i) {
    for (std::size_t j = blo; j < bhi; ++j) {
      std::size_t& len = cur[j - blo];
      if (a[i] == b[j]) {
        len = (j > blo ? prev[j - blo - 1] : 0) + 1;
        if (len > best.size)
          best = Block{i - len + 1, j - len + 1, len};
      } else {
        len = 0;
      }
    }
    std::swap(prev, cur);
  }
  return best;
}

std::size_t matched_total(const std::string& a, std::size_t alo, std::size_t ahi,
                          const std::string& b, std::size_t blo, std::size_t bhi) {
  Block m = longest_match(a, alo, ahi, b, blo, bhi);
  if (m.size == 0) return 0;
  return m.size + matched_total(a, alo, m.a, b, blo, m.b) +
         matched_total(a, m.a + m.size, ahi, b, m.b + m.size, bhi);
}

}  // namespace

double similarity_ratio(const std::string& a, const std::string& b) {
  const std::size_t total = a.size() + b.size();
  if (total == 0) return 1.0;
  const std::size_t m = matched_total(a, 0, a.size(), b, 0, b.size());
  return 2.0 * static_cast<double>(m) / static_cast<double>(total);
}

std::function<bool(const std::string&)> crash_oracle(SimilaritySpec spec) {
  return [spec = std::move(spec)](const std::string& observed) {
    return observed == spec.expected_message ||
           similarity_ratio(observed, spec.expected_message) >= spec.threshold;
  };
}

}  // namespace greduce
