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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "greduce/baselines.hpp"
#include "greduce/cases.hpp"
#include "greduce/reduction.hpp"
#include "greduce/report.hpp"
#include "greduce/similarity.hpp"
#include "greduce/trace_io.hpp"

using namespace greduce;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int number, const char* title, bool ok, const std::string& detail) {
  std::printf("%s  criterion %2d: %s (%s)\n", ok ? "PASS" : "FAIL", number,
              title, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

SearchConfig make_config(SearchKind search, AlignmentStrategy strategy,
                         std::uint64_t realign_seed) {
  SearchConfig c;
  c.search = search;
  c.strategy = strategy;
  c.realign_seed = realign_seed;
  c.timeout_seconds = 120;
  return c;
}

const std::vector<SearchKind> kSearches{
    SearchKind::Powerset, SearchKind::SequenceDdmin, SearchKind::TreeHdd};
const std::vector<AlignmentStrategy> kStrategies{
    AlignmentStrategy::Halt, AlignmentStrategy::Bypass,
    AlignmentStrategy::Realign};

// Fixed-seed suites. The holding seeds are the first recordings (in seed
// order) whose outputs exhibit each case's bug; the small-unit seeds
// additionally stay within the powerset oracle ceiling.
const std::vector<std::uint64_t> kPasswordHolding{1, 11, 14, 17, 18};
const std::vector<std::uint64_t> kDigraphHolding{0, 1, 3, 6, 7};
const std::vector<std::uint64_t> kExprHolding{213, 311, 394, 407, 459};
const std::vector<std::uint64_t> kNestedHolding{0, 13, 14, 16, 17};
const std::vector<std::uint64_t> kDigraphSuite{0, 1, 3, 6, 7, 8, 10, 15, 16, 19};
const std::vector<std::uint64_t> kExprSuite{213, 311, 394, 407, 459,
                                            546, 808, 864, 901, 913};

struct OracleSubject {
  const char* case_name;
  std::uint64_t seed;
  bool expect_equality;  // oracle size must be matched exactly
};
const std::vector<OracleSubject> kOracleSubjects{
    {"password", 482835, true},
    {"nested", 35, true},
    {"digraph", 49, false},
    {"digraph", 29, false},
    {"expr", 213, false},
    {"expr", 311, false},
};

ReductionResult run_case(const CaseSpec& spec, std::uint64_t seed,
                         SearchKind search, AlignmentStrategy strategy) {
  return greduce::greduce(spec.generator, spec.name, seed, spec.property,
                          make_config(search, strategy, seed), spec.validity,
                          spec.size_fn);
}

// --------------------------------------------------------------------------

void criterion_1_motivating_example() {
  const auto t0 = Clock::now();
  const CaseSpec& spec = find_case("password");
  bool ok = true;
  std::string detail;
  for (SearchKind search : kSearches) {
    for (AlignmentStrategy strategy : kStrategies) {
      ReductionResult r = run_case(spec, spec.fixture_seed, search, strategy);
      if (r.final_input.text != "c\nc\n") {
        ok = false;
        detail = std::string(search_name(search)) + "/" +
                 strategy_name(strategy) + " produced \"" + r.final_input.text +
                 "\"";
      }
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 5.0) {
    ok = false;
    detail += " too slow";
  }
  if (ok)
    detail = "every search x strategy yields \"c\\nc\\n\" in " +
             std::to_string(elapsed) + "s";
  report(1, "motivating example reduces exactly", ok, detail);
}

void criterion_2_oracle_equivalence() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::string detail;
  for (const OracleSubject& subject : kOracleSubjects) {
    const CaseSpec& spec = find_case(subject.case_name);
    SearchConfig cfg = make_config(SearchKind::Powerset,
                                   AlignmentStrategy::Realign, subject.seed);

    ReductionSession oracle(spec.generator, spec.name, spec.property, cfg,
                            spec.validity, spec.size_fn);
    oracle.begin(subject.seed);
    if (oracle.units().size() > 12) {
      ok = false;
      detail = std::string(subject.case_name) + " subject exceeds 12 units";
      continue;
    }
    const std::int64_t optimum =
        powerset_search(oracle).metrics.size_final.total();

    for (SearchKind search : {SearchKind::SequenceDdmin, SearchKind::TreeHdd}) {
      cfg.search = search;
      ReductionSession s(spec.generator, spec.name, spec.property, cfg,
                         spec.validity, spec.size_fn);
      s.begin(subject.seed);
      ReductionResult r = search == SearchKind::SequenceDdmin ? ddmin_sequence(s)
                                                              : hdd_tree(s);
      if (one_minimal_check(s, r.final_labeling).has_value()) {
        ok = false;
        detail = std::string(subject.case_name) + "/" + search_name(search) +
                 " result is not 1-minimal";
      }
      const std::int64_t size = r.metrics.size_final.total();
      if (size < optimum || (subject.expect_equality && size != optimum)) {
        ok = false;
        detail = std::string(subject.case_name) + "/" + search_name(search) +
                 " size " + std::to_string(size) + " vs oracle " +
                 std::to_string(optimum);
      }
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 60.0) {
    ok = false;
    detail += " too slow";
  }
  if (ok)
    detail = "6 subjects, 1-minimal, oracle-bounded, " +
             std::to_string(elapsed) + "s";
  report(2, "searches match the powerset oracle", ok, detail);
}

std::vector<ReductionReport> run_validity_campaign() {
  std::vector<ReductionReport> reports;
  auto run_block = [&](const char* name, const std::vector<std::uint64_t>& seeds) {
    CampaignConfig cfg;
    cfg.cases = {name};
    cfg.searches = {SearchKind::TreeHdd};
    cfg.strategies = {AlignmentStrategy::Realign};
    cfg.seeds = seeds;
    cfg.timeout_seconds = 120;
    CampaignOutcome out = run_campaign(cfg);
    reports.insert(reports.end(), out.reports.begin(), out.reports.end());
  };
  run_block("password", kPasswordHolding);
  run_block("digraph", kDigraphHolding);
  run_block("expr", kExprHolding);
  run_block("nested", kNestedHolding);
  return reports;
}

void criterion_3_validity_preservation() {
  std::vector<ReductionReport> reports = run_validity_campaign();
  bool ok = reports.size() == 20;
  std::string detail;
  for (const ReductionReport& r : reports) {
    if (r.validity_rate != 1.0) {
      ok = false;
      detail = r.case_name + " seed " + std::to_string(r.seed) +
               " validity " + std::to_string(r.validity_rate);
    }
  }

  // The raw-text baseline cannot keep candidates valid.
  const CaseSpec& graph = find_case("digraph");
  auto input = bare_execution(graph.generator, graph.fixture_seed);
  auto wrap = [](const std::string& bytes) {
    return GeneratedInput{bytes,
                          SizeMeasure::scalar(static_cast<std::int64_t>(bytes.size()))};
  };
  RawDdminParams params;
  params.property = [&](const std::string& b) {
    return graph.validity(wrap(b)) && graph.property(wrap(b));
  };
  params.validity = [&](const std::string& b) { return graph.validity(wrap(b)); };
  BaselineResult raw = raw_ddmin(input.text, TokenView::lines(input.text), params);
  if (raw.metrics.validity_rate >= 1.0) {
    ok = false;
    detail += " raw_ddmin validity not < 100%";
  }
  if (ok)
    detail = "20/20 runs fully valid; raw_ddmin validity " +
             std::to_string(raw.metrics.validity_rate);
  report(3, "aligned candidates stay valid", ok, detail);
}

void criterion_4_strategy_ordering() {
  double totals[3] = {0, 0, 0};
  int halt_stuck = 0;
  const struct {
    const char* name;
    const std::vector<std::uint64_t>* seeds;
  } suites[] = {{"digraph", &kDigraphSuite}, {"expr", &kExprSuite}};
  int runs = 0;
  for (const auto& suite : suites) {
    const CaseSpec& spec = find_case(suite.name);
    for (std::uint64_t seed : *suite.seeds) {
      ++runs;
      for (size_t i = 0; i < kStrategies.size(); ++i) {
        ReductionResult r =
            run_case(spec, seed, SearchKind::TreeHdd, kStrategies[i]);
        totals[i] += static_cast<double>(r.metrics.size_final.total());
        if (kStrategies[i] == AlignmentStrategy::Halt &&
            r.metrics.size_final.total() == r.metrics.size_original.total() &&
            r.metrics.halted_candidates > 0)
          ++halt_stuck;
      }
    }
  }
  const double mean_halt = totals[0] / runs;
  const double mean_bypass = totals[1] / runs;
  const double mean_realign = totals[2] / runs;
  bool ok = runs >= 20 && mean_realign < mean_bypass &&
            mean_bypass < mean_halt && halt_stuck >= 1;
  std::ostringstream detail;
  detail << "means over " << runs << " runs: realign " << mean_realign
         << " < bypass " << mean_bypass << " < halt " << mean_halt << ", "
         << halt_stuck << " halt-stuck runs";
  report(4, "re-align beats bypass beats halt", ok, detail.str());
}

void criterion_5_search_comparison() {
  const CaseSpec& spec = find_case("nested");
  ReductionResult seq = run_case(spec, spec.fixture_seed,
                                 SearchKind::SequenceDdmin,
                                 AlignmentStrategy::Realign);
  ReductionResult tree = run_case(spec, spec.fixture_seed, SearchKind::TreeHdd,
                                  AlignmentStrategy::Realign);
  bool ok = tree.metrics.property_tests <= seq.metrics.property_tests &&
            tree.metrics.size_final.total() <= seq.metrics.size_final.total();
  std::ostringstream detail;
  detail << "tree " << tree.metrics.property_tests << " tests/size "
         << tree.metrics.size_final.total() << " vs seq "
         << seq.metrics.property_tests << " tests/size "
         << seq.metrics.size_final.total();
  report(5, "tree search needs no more property tests", ok, detail.str());
}

void criterion_6_baseline_comparison() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"password", "digraph", "expr", "nested"}) {
    const CaseSpec& spec = find_case(name);
    ReductionResult ours = run_case(spec, spec.fixture_seed, SearchKind::TreeHdd,
                                    AlignmentStrategy::Realign);
    const std::int64_t our_size = ours.metrics.size_final.total();

    auto [trace, input] = record_execution(spec.generator, spec.name,
                                           spec.fixture_seed);
    ChoiceShrinkParams cs;
    cs.property = spec.property;
    cs.fresh_seed = spec.fixture_seed;
    BaselineResult choice = choice_delete_shrink(spec.generator, trace, cs);
    const std::int64_t choice_size = spec.size_fn(choice.reduced_input).total();
    if (our_size > choice_size) {
      ok = false;
      detail = std::string(name) + ": greduce " + std::to_string(our_size) +
               " > choice-delete " + std::to_string(choice_size);
    }

    auto wrap = [&](const std::string& bytes) {
      return GeneratedInput{bytes,
                            SizeMeasure::scalar(static_cast<std::int64_t>(bytes.size()))};
    };
    RawDdminParams params;
    params.property = [&](const std::string& b) { return spec.property(wrap(b)); };
    params.validity = [&](const std::string& b) { return spec.validity(wrap(b)); };
    // Statement-shaped inputs get line tokens (the classic statement-level
    // decomposition); flat strings get character tokens.
    const bool statement_shaped =
        std::string(name) == "digraph" || std::string(name) == "expr";
    TokenView view = statement_shaped ? TokenView::lines(input.text)
                                      : TokenView::chars(input.text);
    BaselineResult raw = raw_ddmin(input.text, view, params);
    if (spec.validity(wrap(raw.reduced_bytes))) {
      const std::int64_t raw_size = spec.size_fn(wrap(raw.reduced_bytes)).total();
      if (our_size > raw_size) {
        ok = false;
        detail = std::string(name) + ": greduce " + std::to_string(our_size) +
                 " > raw_ddmin " + std::to_string(raw_size);
      }
    }
  }
  if (ok) detail = "greduce <= both baselines on all four cases";
  report(6, "trace reduction beats the baselines", ok, detail);
}

void criterion_7_determinism() {
  auto normalize = [](std::vector<ReductionReport> rs) {
    for (auto& r : rs) {
      r.wall_time = 0;
      r.speed = 0;
    }
    return emit_report(rs, ReportFormat::Json);
  };
  std::string a = normalize(run_validity_campaign());
  std::string b = normalize(run_validity_campaign());
  bool ok = a == b;
  report(7, "campaign reports are deterministic", ok,
         ok ? "byte-identical modulo timing" : "reports differ");
}

void criterion_8_identity_alignment() {
  bool ok = true;
  std::string detail;
  for (const CaseSpec& spec : case_registry()) {
    for (std::uint64_t seed = 0; seed < 200 && ok; ++seed) {
      auto [trace, input] = record_execution(spec.generator, spec.name, seed);
      TraceTree tree = build_trace_tree(trace);
      for (AlignmentStrategy strategy : kStrategies) {
        ReexecOutcome out = aligned_reexecution(
            spec.generator, ReducedTrace{&tree, {}}, strategy, seed + 1);
        if (!out.completed() || out.input.text != input.text ||
            !out.events.empty()) {
          ok = false;
          detail = spec.name + " seed " + std::to_string(seed) + " under " +
                   strategy_name(strategy);
          break;
        }
      }
    }
  }
  if (ok) detail = "5 cases x 200 recordings x 3 strategies";
  report(8, "empty labelings reproduce the original", ok, detail);
}

void criterion_9_recording_overhead() {
  bool ok = true;
  std::ostringstream detail;
  for (const CaseSpec& spec : case_registry()) {
    if (!spec.reduction_case) continue;  // the demo sits outside acceptance
    // Quietest of several interleaved rounds on each side; the mean
    // inside a round covers the required 1000 runs. Taking the per-side
    // minimum removes scheduler noise without biasing the comparison.
    constexpr int kRounds = 7, kRuns = 1000;
    std::vector<double> bare_rounds, rec_rounds;
    volatile std::int64_t sink = 0;
    for (int round = 0; round < kRounds; ++round) {
      auto t0 = Clock::now();
      for (std::uint64_t s = 0; s < kRuns; ++s)
        sink = sink + bare_execution(spec.generator, s).size.total();
      bare_rounds.push_back(seconds_since(t0));
      auto t1 = Clock::now();
      for (std::uint64_t s = 0; s < kRuns; ++s)
        sink = sink + record_execution(spec.generator, spec.name, s)
                          .second.size.total();
      rec_rounds.push_back(seconds_since(t1));
    }
    const double bare = *std::min_element(bare_rounds.begin(), bare_rounds.end());
    const double rec = *std::min_element(rec_rounds.begin(), rec_rounds.end());
    const double ratio = rec / bare;
    detail.precision(2);
    detail << spec.name << " " << std::fixed << ratio << "x (bare "
           << bare * 1e3 << "us, rec " << rec * 1e3 << "us per kilorun) ";
    if (ratio > 2.0) ok = false;
  }
  report(9, "recording costs at most twice bare generation", ok, detail.str());
}

void criterion_10_similarity_oracle() {
  bool ok = similarity_ratio("abcd", "bcde") == 0.75;
  std::string expected80 = std::string(80, 'c') + std::string(20, 'x');
  std::string variant80 = std::string(80, 'c') + std::string(20, 'y');
  std::string expected79 = std::string(79, 'c') + std::string(21, 'x');
  std::string variant79 = std::string(79, 'c') + std::string(21, 'y');
  auto oracle80 = crash_oracle(SimilaritySpec{expected80, 0.8});
  auto oracle79 = crash_oracle(SimilaritySpec{expected79, 0.8});
  if (!oracle80(variant80)) ok = false;  // ratio exactly 0.8 passes
  if (oracle79(variant79)) ok = false;   // ratio 0.79 fails
  report(10, "similarity oracle hits its exact values", ok,
         ok ? "abcd/bcde = 0.75; threshold boundary respected" : "mismatch");
}

void criterion_11_monotonicity() {
  bool ok = true;
  std::string detail;
  for (const char* name : {"password", "digraph", "expr", "nested"}) {
    MonotonicityReport r = monotonicity_probe(find_case(name), 200);
    if (r.violations != 0 || r.completed_pairs == 0) {
      ok = false;
      detail = std::string(name) + " had " + std::to_string(r.violations) +
               " violations";
    }
  }
  MonotonicityReport demo = monotonicity_probe(find_case("nonmono"), 200);
  if (demo.violations < 1) {
    ok = false;
    detail += " demo generator showed no violation";
  }
  if (ok)
    detail = "0 violations on reduction cases; " +
             std::to_string(demo.violations) + " on the demo";
  report(11, "monotonicity probe separates the cases", ok, detail);
}

}  // namespace

int main() {
  criterion_1_motivating_example();
  criterion_2_oracle_equivalence();
  criterion_3_validity_preservation();
  criterion_4_strategy_ordering();
  criterion_5_search_comparison();
  criterion_6_baseline_comparison();
  criterion_7_determinism();
  criterion_8_identity_alignment();
  criterion_9_recording_overhead();
  criterion_10_similarity_oracle();
  criterion_11_monotonicity();
  if (g_failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
