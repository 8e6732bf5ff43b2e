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
#include <vector>

#include "greduce/gen.hpp"
#include "greduce/reduction.hpp"
#include "greduce/trace.hpp"

namespace greduce {

/// A serialized input cut into atomic chunks plus the joiner that
/// reassembles them. Reassembling all tokens reproduces the original
/// bytes.
struct TokenView {
  std::vector<std::string> tokens;
  std::string joiner;

  static TokenView chars(const std::string& bytes);
  static TokenView lines(const std::string& bytes);
  std::string assemble(const std::vector<size_t>& kept) const;
};

struct RawDdminParams {
  std::function<bool(const std::string&)> property;  // over raw bytes
  /// Optional domain validity checker; candidate validity statistics are
  /// measured against it.
  std::function<bool(const std::string&)> validity;
  double timeout_seconds = 0;
};

struct BaselineResult {
  std::string reduced_bytes;
  GeneratedInput reduced_input;  // choice shrinking only
  ReductionReport metrics;
};

/// Delta debugging straight over the serialized input. Candidates carry no
/// validity guarantee; the fraction that pass the validity checker is
/// reported.
BaselineResult raw_ddmin(const std::string& bytes, const TokenView& tokens,
                         const RawDdminParams& params);

/// The flat decision list of a trace, stripped of all structure.
struct ChoiceSequence {
  std::vector<Scalar> values;

  static ChoiceSequence from_trace(const Trace& trace);
};

struct ChoiceShrinkParams {
  std::function<bool(const GeneratedInput&)> property;
  std::uint64_t fresh_seed = 0;  // fresh draws when replay runs dry
  double timeout_seconds = 0;
};

/// Internal-shrinking baseline: ddmin-style deletion over the flat choice
/// sequence. Candidates re-run the generator replaying the remaining
/// values in order; a value invalid for the live domain is consumed and
/// substituted by a deterministic fresh draw, and draws continue fresh
/// once the sequence is exhausted. Outputs are valid by construction.
BaselineResult choice_delete_shrink(const GeneratorFn& gen,
                                    const Trace& trace,
                                    const ChoiceShrinkParams& params);

}  // namespace greduce
