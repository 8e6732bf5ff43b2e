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

#pragma once

#include <functional>
#include <string>

namespace greduce {

/// Ratcliff/Obershelp similarity: 2M / (|a| + |b|), where M is the total
/// length of the matching blocks found by recursively locating the longest
/// matching substring. Two empty strings compare as 1.0.
double similarity_ratio(const std::string& a, const std::string& b);

/// Error-message comparison spec: accept the observed message when it is
/// identical to the expected one or at least `threshold`-similar.
struct SimilaritySpec {
  std::string expected_message;
  double threshold = 0.8;
};

/// Predicate over an observed error message under the given spec.
std::function<bool(const std::string&)> crash_oracle(SimilaritySpec spec);

}  // namespace greduce
