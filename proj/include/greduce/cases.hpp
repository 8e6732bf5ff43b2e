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
#include <optional>
#include <string>
#include <vector>

#include "greduce/gen.hpp"
#include "greduce/similarity.hpp"

namespace greduce {

/// One bundled reduction subject: a generator, a bug-inducing fixture seed,
/// the property test that recognizes the bug, and a validity checker for
/// the generated inputs.
struct CaseSpec {
  std::string name;
  GeneratorFn generator;
  std::uint64_t fixture_seed = 0;
  std::function<bool(const GeneratedInput&)> property;
  std::function<bool(const GeneratedInput&)> validity;
  std::function<SizeMeasure(const GeneratedInput&)> size_fn;
  /// Whether misalignment can occur (choice domains depend on earlier
  /// removable choices).
  bool dependency_bearing = false;
  /// Whether removing more of the trace can only shrink the output.
  bool monotone = true;
  /// Demo-only cases are excluded from reduction acceptance.
  bool reduction_case = true;
};

/// All bundled cases: password, digraph, expr, nested, plus the
/// non-monotone demo generator.
const std::vector<CaseSpec>& case_registry();

/// Lookup by name; throws UnknownCase.
const CaseSpec& find_case(const std::string& name);

/// Evaluates the bundled expression language; returns the crash message of
/// the injected evaluator bug, if the program triggers it.
std::optional<std::string> expr_crash_message(const std::string& program);

struct MonotonicityReport {
  int trials = 0;
  int completed_pairs = 0;
  int violations = 0;
};

/// Samples nested labeling pairs L1 ⊆ L2 of the case's fixture trace,
/// re-executes both under the halt strategy, and counts pairs where the
/// larger labeling produced a larger output.
MonotonicityReport monotonicity_probe(const CaseSpec& spec, int trials,
                                      std::uint64_t probe_seed = 7);

}  // namespace greduce
