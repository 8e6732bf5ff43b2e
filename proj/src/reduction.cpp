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

#include "greduce/reduction.hpp"

#include <algorithm>
#include <set>

#include "greduce/trace_io.hpp"

namespace greduce {

const char* search_name(SearchKind s) {
  switch (s) {
    case SearchKind::Powerset: return "powerset";
    case SearchKind::SequenceDdmin: return "seq";
    case SearchKind::TreeHdd: return "tree";
  }
  return "tree";
}

ReductionSession::ReductionSession(
    GeneratorFn gen, std::string generator_id,
    std::function<bool(const GeneratedInput&)> property, SearchConfig config,
    std::function<bool(const GeneratedInput&)> validity,
    std::function<SizeMeasure(const GeneratedInput&)> size_fn)
    : gen_(std::move(gen)),
      generator_id_(std::move(generator_id)),
      property_{std::move(property)},
      config_(config),
      validity_(std::move(validity)),
      size_fn_(std::move(size_fn)) {}

void ReductionSession::begin(std::uint64_t seed) {
  config_.seed = seed;
  auto [trace, input] = record_execution(gen_, generator_id_, seed);
  trace_ = std::move(trace);
  tree_ = build_trace_tree(trace_);
  units_ = removable_units(tree_);
  original_input_ = std::move(input);
  if (!property_(original_input_))
    throw PropertyNotExhibited("the recorded input does not exhibit the property");
  input_cache_[input_digest_hex(original_input_.text)] = true;
  best_labeling_ = RemovalLabeling{};
  best_input_ = original_input_;
  if (config_.timeout_seconds > 0) {
    deadline_set_ = true;
    deadline_ = std::chrono::steady_clock::now() +
                std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                    std::chrono::duration<double>(config_.timeout_seconds));
  }
}

std::string ReductionSession::labeling_key(const RemovalLabeling& labeling) const {
  std::string key;
  for (NodeId id : labeling.removed) {
    key += std::to_string(id);
    key += ',';
  }
  return key;
}

SizeMeasure ReductionSession::measure(const GeneratedInput& input) const {
  return size_fn_ ? size_fn_(input) : input.size;
}

CandidateResult ReductionSession::test_candidate(const RemovalLabeling& labeling) {
  if (deadline_set_ && std::chrono::steady_clock::now() > deadline_) {
    timed_out_ = true;
    throw TimeoutExceeded("session deadline reached");
  }
  const std::string key = labeling_key(labeling);
  if (config_.cache_enabled) {
    auto it = labeling_cache_.find(key);
    if (it != labeling_cache_.end()) return it->second;
  }

  ReexecOutcome out =
      aligned_reexecution(gen_, ReducedTrace{&tree_, labeling},
                          config_.strategy, config_.realign_seed,
                          config_.max_bypass_cascade);
  prog_mismatches_ += out.prog_mismatches();
  dec_mismatches_ += out.dec_mismatches();

  CandidateResult res;
  if (!out.completed()) {
    ++halted_;
    res.holds = false;
    res.effective = labeling;
  } else {
    ++completed_;
    if (!validity_ || validity_(out.input)) ++valid_completed_;
    const std::string input_digest = input_digest_hex(out.input.text);
    bool holds;
    auto pit = input_cache_.find(input_digest);
    if (config_.cache_enabled && pit != input_cache_.end()) {
      holds = pit->second;
    } else {
      holds = property_(out.input);
      input_cache_[input_digest] = holds;
    }
    res.holds = holds;
    res.effective = (holds && config_.strategy == AlignmentStrategy::Bypass)
                        ? out.effective_labeling
                        : labeling;
    res.input = std::move(out.input);
  }
  history_.emplace_back(key, res.holds);
  if (config_.cache_enabled) labeling_cache_[key] = res;
  return res;
}

void ReductionSession::accept(RemovalLabeling labeling, GeneratedInput input) {
  accepted_closure_sizes_.push_back(removal_closure(tree_, labeling).size());
  best_labeling_ = std::move(labeling);
  best_input_ = std::move(input);
}

ReductionReport ReductionSession::snapshot_metrics() const {
  ReductionReport r;
  r.search = search_name(config_.search);
  r.strategy = strategy_name(config_.strategy);
  r.seed = config_.seed;
  r.realign_seed = config_.realign_seed;
  r.timeout_seconds = config_.timeout_seconds;
  r.size_original = measure(original_input_);
  r.size_final = measure(best_input_);
  const double orig = static_cast<double>(r.size_original.total());
  r.quality = orig > 0 ? static_cast<double>(r.size_final.total()) / orig : 1.0;
  r.property_tests = property_.invocations;
  r.validity_rate =
      completed_ > 0
          ? static_cast<double>(valid_completed_) / static_cast<double>(completed_)
          : 1.0;
  r.halted_candidates = halted_;
  r.prog_mismatches = prog_mismatches_;
  r.dec_mismatches = dec_mismatches_;
  r.timed_out = timed_out_;
  r.result_digest = sha256_hex(best_input_.text);
  return r;
}

namespace {

std::vector<std::vector<NodeId>> split_chunks(const std::vector<NodeId>& seq,
                                              size_t n) {
  std::vector<std::vector<NodeId>> out;
  const size_t sz = seq.size();
  size_t base = sz / n, rem = sz % n, pos = 0;
  for (size_t i = 0; i < n && pos < sz; ++i) {
    size_t len = base + (i < rem ? 1 : 0);
    if (len == 0) continue;
    out.emplace_back(seq.begin() + static_cast<std::ptrdiff_t>(pos),
                     seq.begin() + static_cast<std::ptrdiff_t>(pos + len));
    pos += len;
  }
  return out;
}

struct DdminState {
  RemovalLabeling base;
  std::vector<NodeId> seq;  // kept units the search still works on
};

// Tests the candidate that keeps only `keep` out of st.seq (everything in
// st.base stays removed). On success the session's best moves forward and
// the state adopts the effective labeling.
bool ddmin_attempt(ReductionSession& s, DdminState& st,
                   const std::vector<NodeId>& keep) {
  RemovalLabeling cand = st.base;
  std::set<NodeId> keepset(keep.begin(), keep.end());
  for (NodeId u : st.seq)
    if (keepset.count(u) == 0) cand.removed.insert(u);
  CandidateResult res = s.test_candidate(cand);
  if (!res.holds) return false;
  s.accept(res.effective, std::move(*res.input));
  st.base = s.best_labeling();
  std::vector<NodeId> survivors;
  for (NodeId u : keep)
    if (!unit_removed(s.tree(), st.base, u)) survivors.push_back(u);
  st.seq = std::move(survivors);
  return true;
}

// Zeller–Hildebrandt ddmin: subsets first, then complements, doubling the
// granularity when neither reduces. Finishes 1-minimal over st.seq,
// including the removal of a final single unit.
void ddmin_run(ReductionSession& s, DdminState& st) {
  if (st.seq.empty()) return;
  if (st.seq.size() == 1) {
    ddmin_attempt(s, st, {});
    return;
  }
  size_t n = 2;
  while (st.seq.size() >= 2) {
    auto chunks = split_chunks(st.seq, n);
    bool reduced = false;
    for (const auto& chunk : chunks) {
      if (ddmin_attempt(s, st, chunk)) {
        n = 2;
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      for (size_t i = 0; i < chunks.size(); ++i) {
        std::vector<NodeId> complement;
        for (size_t j = 0; j < chunks.size(); ++j) {
          if (j == i) continue;
          complement.insert(complement.end(), chunks[j].begin(), chunks[j].end());
        }
        if (complement.empty()) continue;
        if (ddmin_attempt(s, st, complement)) {
          n = std::max<size_t>(n - 1, 2);
          reduced = true;
          break;
        }
      }
    }
    if (!reduced) {
      if (n >= st.seq.size()) break;
      n = std::min(st.seq.size(), 2 * n);
    }
    if (st.seq.size() == 1) {
      ddmin_attempt(s, st, {});
      break;
    }
  }
}

bool next_combination(std::vector<size_t>& idx, size_t n) {
  const size_t k = idx.size();
  for (size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

void powerset_impl(ReductionSession& s) {
  const auto& units = s.units();
  if (units.size() > 20)
    throw OracleTooLarge("powerset search over " +
                         std::to_string(units.size()) + " units");
  const size_t n = units.size();
  // Descending removal count, so the first holding candidate is optimal
  // over the labeling space; lexicographic over the document-ordered unit
  // sequence within a count.
  for (size_t k = n + 1; k-- > 0;) {
    std::vector<size_t> idx(k);
    for (size_t i = 0; i < k; ++i) idx[i] = i;
    do {
      RemovalLabeling cand;
      for (size_t i : idx) cand.removed.insert(units[i]);
      CandidateResult res = s.test_candidate(cand);
      if (res.holds) {
        s.accept(res.effective, std::move(*res.input));
        return;
      }
    } while (next_combination(idx, n));
  }
}

void ddmin_impl(ReductionSession& s) {
  DdminState st;
  st.seq = s.units();
  ddmin_run(s, st);
}

void hdd_impl(ReductionSession& s) {
  int max_level = 0;
  for (NodeId u : s.units())
    max_level = std::max(max_level, s.tree().unit_level(u));
  RemovalLabeling base;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int level = 1; level <= max_level; ++level) {
      std::vector<NodeId> level_units;
      for (NodeId u : s.units()) {
        if (s.tree().unit_level(u) == level && !unit_removed(s.tree(), base, u))
          level_units.push_back(u);
      }
      if (level_units.empty()) continue;
      DdminState st{base, level_units};
      ddmin_run(s, st);
      if (st.base.removed != base.removed) {
        base = st.base;
        changed = true;
      }
    }
  }
}

ReductionResult finish(ReductionSession& s, double wall_seconds) {
  ReductionResult out;
  out.final_input = s.best_input();
  out.final_labeling = s.best_labeling();
  out.metrics = s.snapshot_metrics();
  out.metrics.wall_time = wall_seconds;
  const double reduced = static_cast<double>(
      out.metrics.size_original.total() - out.metrics.size_final.total());
  out.metrics.speed = wall_seconds > 0 ? reduced / wall_seconds : 0.0;
  out.history = s.history();
  return out;
}

ReductionResult run_search_kind(ReductionSession& s, SearchKind kind) {
  const auto t0 = std::chrono::steady_clock::now();
  try {
    switch (kind) {
      case SearchKind::Powerset: powerset_impl(s); break;
      case SearchKind::SequenceDdmin: ddmin_impl(s); break;
      case SearchKind::TreeHdd: hdd_impl(s); break;
    }
  } catch (const TimeoutExceeded&) {
    // best-so-far is already in the session
  }
  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return finish(s, wall);
}

}  // namespace

ReductionResult powerset_search(ReductionSession& session) {
  return run_search_kind(session, SearchKind::Powerset);
}

ReductionResult ddmin_sequence(ReductionSession& session) {
  return run_search_kind(session, SearchKind::SequenceDdmin);
}

ReductionResult hdd_tree(ReductionSession& session) {
  return run_search_kind(session, SearchKind::TreeHdd);
}

ReductionResult greduce(
    const GeneratorFn& gen, const std::string& generator_id,
    std::uint64_t seed, std::function<bool(const GeneratedInput&)> property,
    const SearchConfig& config,
    std::function<bool(const GeneratedInput&)> validity,
    std::function<SizeMeasure(const GeneratedInput&)> size_fn) {
  ReductionSession session(gen, generator_id, std::move(property), config,
                           std::move(validity), std::move(size_fn));
  session.begin(seed);
  return run_search_kind(session, config.search);
}

std::optional<NodeId> one_minimal_check(ReductionSession& session,
                                        const RemovalLabeling& labeling) {
  for (NodeId u : session.units()) {
    if (unit_removed(session.tree(), labeling, u)) continue;
    RemovalLabeling plus = labeling;
    plus.removed.insert(u);
    if (session.test_candidate(plus).holds) return u;
  }
  return std::nullopt;
}

}  // namespace greduce
