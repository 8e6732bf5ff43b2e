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

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "greduce/trace.hpp"

namespace greduce {

/// Size of a generated input: a plain count, or a (nodes, edges) pair for
/// graph-shaped inputs. Pair sizes are summed wherever a single number is
/// needed.
struct SizeMeasure {
  enum class Kind { Scalar, NodesEdges } kind = Kind::Scalar;
  std::int64_t a = 0;  // scalar value, or node count
  std::int64_t b = 0;  // edge count

  static SizeMeasure scalar(std::int64_t v) {
    return SizeMeasure{Kind::Scalar, v, 0};
  }
  static SizeMeasure nodes_edges(std::int64_t n, std::int64_t e) {
    return SizeMeasure{Kind::NodesEdges, n, e};
  }
  std::int64_t total() const { return kind == Kind::Scalar ? a : a + b; }
  bool operator==(const SizeMeasure&) const = default;
};

std::string size_to_string(const SizeMeasure& s);

/// A generated test input: its canonical serialization plus a size measure.
struct GeneratedInput {
  std::string text;
  SizeMeasure size;
  bool operator==(const GeneratedInput&) const = default;
};

/// Execution context handed to a generator. All randomness must flow
/// through it; the same generator code then serves recording, bare runs,
/// trace-aligned re-execution and flat choice replay. A context drives
/// exactly one execution and must not be shared.
class GenContext {
 public:
  virtual ~GenContext() = default;

  /// Uniform integer in [lo, hi). Requires lo < hi.
  virtual std::int64_t choose_int(const Site& site, std::int64_t lo,
                                  std::int64_t hi) = 0;

  /// One of the given options; membership is by value. Requires a
  /// non-empty option list. The shared form lets generators reuse a list
  /// across draws without per-decision copies.
  virtual Scalar choose_from(const Site& site, const SharedScalars& options) = 0;

  Scalar choose_from(const Site& site, const ScalarList& options) {
    return choose_from(site, share_scalars(options));
  }

  /// A loop running n times, n drawn from [0, max). The body receives the
  /// 1-based iteration ordinal. Returns the number of iterations executed.
  /// Each iteration is a removable unit of the trace.
  virtual int repeat(const Site& site, std::int64_t max,
                     const std::function<void(GenContext&, int)>& body) = 0;

  /// Conditionally runs the body on a drawn boolean. Returns whether the
  /// body ran. The body's trace block is a removable unit.
  virtual bool maybe(const Site& site,
                     const std::function<void(GenContext&)>& body) = 0;

 protected:
  static void check_site(const Site& site);
};

using GeneratorFn = std::function<GeneratedInput(GenContext&)>;

// ---------------------------------------------------------------------------
// Recording

/// Runs the generator with a fresh PRNG seeded by `seed`, recording every
/// decision. Deterministic in (gen, seed). Generator exceptions surface as
/// GeneratorError.
std::pair<Trace, GeneratedInput> record_execution(const GeneratorFn& gen,
                                                  const std::string& generator_id,
                                                  std::uint64_t seed);

/// Runs the generator with a bare PRNG and no recording; the reference
/// point for recording-overhead measurements.
GeneratedInput bare_execution(const GeneratorFn& gen, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Trace-aligned re-execution

enum class AlignmentStrategy { Halt, Bypass, Realign };

const char* strategy_name(AlignmentStrategy s);

enum class MisalignmentKind {
  ProgMismatch,  // the re-execution requested a different site/structure
  DecMismatch,   // the recorded value is invalid in the live domain
};

struct MisalignmentEvent {
  ExecutionPath at;  // the request's position, in recorded coordinates
  MisalignmentKind kind = MisalignmentKind::ProgMismatch;
  enum class Action { Halted, BypassedUnit, RealignedFreshValue } action =
      Action::Halted;
  NodeId bypassed_unit = kNoNode;
};

struct ReexecOutcome {
  enum class Status { Completed, Halted } status = Status::Halted;
  GeneratedInput input;              // Completed only
  Trace trace;                       // trace of the re-execution (Completed)
  RemovalLabeling effective_labeling;  // requested plus bypass additions
  std::vector<MisalignmentEvent> events;

  bool completed() const { return status == Status::Completed; }
  int prog_mismatches() const;
  int dec_mismatches() const;
};

/// Re-executes the generator so that its decision stream aligns with the
/// kept decisions of the reduced trace.
///
/// Every request is matched against the cursor's next kept decision in
/// recorded coordinates. A path/site/role mismatch is a ProgMismatch; a
/// matched decision whose value is invalid in the live domain is a
/// DecMismatch. The strategy then decides: Halt aborts the run; Bypass
/// labels the smallest removable unit enclosing the cursor's decision and
/// retries (unwinding live constructs when the removed unit contains the
/// execution point); Realign serves a fresh value from a dedicated PRNG
/// seeded by realign_seed and resynchronizes on later requests.
///
/// `max_bypass_cascade` caps chained bypass removals within one
/// re-execution; the cap exhausting behaves like Halt.
ReexecOutcome aligned_reexecution(const GeneratorFn& gen,
                                  const ReducedTrace& reduced,
                                  AlignmentStrategy strategy,
                                  std::uint64_t realign_seed,
                                  int max_bypass_cascade = 64);

}  // namespace greduce
