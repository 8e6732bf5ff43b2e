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

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "greduce/gen.hpp"
#include "greduce/trace.hpp"

namespace greduce {

enum class SearchKind { Powerset, SequenceDdmin, TreeHdd };

const char* search_name(SearchKind s);

struct SearchConfig {
  SearchKind search = SearchKind::TreeHdd;
  AlignmentStrategy strategy = AlignmentStrategy::Realign;
  std::uint64_t seed = 0;
  std::uint64_t realign_seed = 0;
  double timeout_seconds = 0;  // 0 disables the deadline
  int max_bypass_cascade = 64;
  bool cache_enabled = true;
};

/// Deterministic bug predicate with an invocation counter. Cache hits do
/// not go through operator() and therefore do not count.
struct PropertyTest {
  std::function<bool(const GeneratedInput&)> fn;
  std::int64_t invocations = 0;

  bool operator()(const GeneratedInput& input) {
    ++invocations;
    return fn(input);
  }
};

/// Per-run metrics, shared by the searches and the baseline reducers.
struct ReductionReport {
  std::string case_name;
  std::string search;
  std::string strategy;
  std::uint64_t seed = 0;
  std::uint64_t realign_seed = 0;
  double timeout_seconds = 0;
  SizeMeasure size_original;
  SizeMeasure size_final;
  double quality = 0;          // size_final / size_original (pairs summed)
  double wall_time = 0;        // seconds
  std::int64_t property_tests = 0;
  double speed = 0;            // units reduced per second
  double validity_rate = 1.0;  // completed candidates passing validity
  std::int64_t halted_candidates = 0;
  std::int64_t prog_mismatches = 0;
  std::int64_t dec_mismatches = 0;
  bool timed_out = false;
  std::string result_digest;
};

struct ReductionResult {
  GeneratedInput final_input;
  RemovalLabeling final_labeling;
  ReductionReport metrics;
  /// (labeling digest, property outcome) per genuine candidate evaluation.
  std::vector<std::pair<std::string, bool>> history;
};

struct CandidateResult {
  bool holds = false;
  /// Requested labeling plus bypass additions when the candidate holds
  /// under the bypass strategy; the requested labeling otherwise.
  RemovalLabeling effective;
  std::optional<GeneratedInput> input;  // present iff the run completed
};

/// One reduction run: the recorded subject, its tree, the property, and
/// the candidate cache. Single-threaded over its property-test loop;
/// independent sessions may run concurrently.
class ReductionSession {
 public:
  ReductionSession(GeneratorFn gen, std::string generator_id,
                   std::function<bool(const GeneratedInput&)> property,
                   SearchConfig config,
                   std::function<bool(const GeneratedInput&)> validity = nullptr,
                   std::function<SizeMeasure(const GeneratedInput&)> size_fn = nullptr);

  /// Records the original execution with the given seed and verifies the
  /// property on it (PropertyNotExhibited otherwise).
  void begin(std::uint64_t seed);

  /// Re-executes against the labeling and evaluates the property, with
  /// labeling- and input-digest caching. A halted run counts as a failing
  /// candidate. Throws TimeoutExceeded past the deadline.
  CandidateResult test_candidate(const RemovalLabeling& labeling);

  /// Marks a holding labeling as the session's current best.
  void accept(RemovalLabeling labeling, GeneratedInput input);

  const TraceTree& tree() const { return tree_; }
  const std::vector<NodeId>& units() const { return units_; }
  const GeneratedInput& original_input() const { return original_input_; }
  const GeneratedInput& best_input() const { return best_input_; }
  const RemovalLabeling& best_labeling() const { return best_labeling_; }
  const SearchConfig& config() const { return config_; }
  SizeMeasure measure(const GeneratedInput& input) const;
  std::string labeling_key(const RemovalLabeling& labeling) const;
  const std::vector<std::size_t>& accepted_closure_sizes() const {
    return accepted_closure_sizes_;
  }

  /// Fills the metric fields this session tracks.
  ReductionReport snapshot_metrics() const;
  const std::vector<std::pair<std::string, bool>>& history() const {
    return history_;
  }

 private:
  GeneratorFn gen_;
  std::string generator_id_;
  PropertyTest property_;
  SearchConfig config_;
  std::function<bool(const GeneratedInput&)> validity_;
  std::function<SizeMeasure(const GeneratedInput&)> size_fn_;

  Trace trace_;
  TraceTree tree_;
  std::vector<NodeId> units_;
  GeneratedInput original_input_;
  RemovalLabeling best_labeling_;
  GeneratedInput best_input_;

  std::unordered_map<std::string, CandidateResult> labeling_cache_;
  std::unordered_map<std::string, bool> input_cache_;
  std::vector<std::pair<std::string, bool>> history_;
  std::vector<std::size_t> accepted_closure_sizes_;

  std::int64_t halted_ = 0;
  std::int64_t completed_ = 0;
  std::int64_t valid_completed_ = 0;
  std::int64_t prog_mismatches_ = 0;
  std::int64_t dec_mismatches_ = 0;
  bool deadline_set_ = false;
  std::chrono::steady_clock::time_point deadline_;
  bool timed_out_ = false;

  friend ReductionResult run_search(ReductionSession& session);
};

/// Brute-force oracle: enumerates labelings by descending removal count
/// (document-order lexicographic within a count) and returns the first
/// holding one — the optimum over the labeling space. Only permitted for
/// up to 20 removable units (OracleTooLarge above).
ReductionResult powerset_search(ReductionSession& session);

/// Classic ddmin (subsets and complements, granularity 2 to 2n) over the
/// document-ordered removable-unit sequence; 1-minimal at unit granularity.
ReductionResult ddmin_sequence(ReductionSession& session);

/// Level-by-level ddmin over removable nodes (depth counted over removable
/// nodes only), sweeping until a full pass makes no change.
ReductionResult hdd_tree(ReductionSession& session);

/// Records the execution, builds the tree, dispatches to the configured
/// search and returns the result with metrics.
ReductionResult greduce(
    const GeneratorFn& gen, const std::string& generator_id,
    std::uint64_t seed, std::function<bool(const GeneratedInput&)> property,
    const SearchConfig& config,
    std::function<bool(const GeneratedInput&)> validity = nullptr,
    std::function<SizeMeasure(const GeneratedInput&)> size_fn = nullptr);

/// Tries each single additional removable unit on top of a holding
/// labeling; returns a unit whose removal still holds, or nullopt when the
/// labeling is 1-minimal.
std::optional<NodeId> one_minimal_check(ReductionSession& session,
                                        const RemovalLabeling& labeling);

}  // namespace greduce
