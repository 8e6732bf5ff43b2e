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

#include <fstream>
#include <sstream>

#include "greduce/cases.hpp"
#include "greduce/report.hpp"
#include "greduce/trace_io.hpp"

using namespace greduce;

namespace {

std::vector<ReductionReport> normalize_timing(std::vector<ReductionReport> rs) {
  for (auto& r : rs) {
    r.wall_time = 0;
    r.speed = 0;
  }
  return rs;
}

CampaignConfig small_campaign() {
  CampaignConfig c;
  c.cases = {"password", "nested"};
  c.searches = {SearchKind::TreeHdd};
  c.strategies = {AlignmentStrategy::Realign};
  c.seeds = {find_case("password").fixture_seed};
  c.timeout_seconds = 60;
  return c;
}

}  // namespace

TEST_CASE("report emission is stable and round-trips") {
  CampaignConfig cfg;
  cfg.cases = {"password"};
  cfg.searches = {SearchKind::Powerset};
  cfg.strategies = {AlignmentStrategy::Halt};
  cfg.seeds = {find_case("password").fixture_seed};
  CampaignOutcome outcome = run_campaign(cfg);
  REQUIRE(outcome.reports.size() == 1);
  CHECK(outcome.all_sound);

  SUBCASE("json emission is byte-stable and parses back") {
    std::string a = emit_report(outcome.reports, ReportFormat::Json);
    std::string b = emit_report(outcome.reports, ReportFormat::Json);
    CHECK(a == b);
    auto parsed = parse_report_json(a);
    CHECK(emit_report(parsed, ReportFormat::Json) == a);
    CHECK(a.find("\"version\":\"greduce-report/1\"") != std::string::npos);
  }
  SUBCASE("csv has the documented header and version column") {
    std::string csv = emit_report(outcome.reports, ReportFormat::Csv);
    CHECK(csv.rfind("version,case,search,strategy,seed,realign_seed,timeout,"
                    "size_original,size_final,quality,wall_time,property_tests,"
                    "speed,validity_rate,halted_candidates,prog_mismatches,"
                    "dec_mismatches,timed_out,result_digest\n",
                    0) == 0);
    CHECK(csv.find("greduce-report/1,password,powerset,halt") != std::string::npos);
  }
  SUBCASE("the lone report carries the motivating numbers") {
    const ReductionReport& r = outcome.reports[0];
    CHECK(r.size_final.total() == 4);  // "c\nc\n"
    CHECK(r.quality == doctest::Approx(0.5));
  }
}

TEST_CASE("campaigns are deterministic modulo timing") {
  CampaignConfig cfg = small_campaign();
  auto a = run_campaign(cfg);
  auto b = run_campaign(cfg);
  CHECK(emit_report(normalize_timing(a.reports), ReportFormat::Json) ==
        emit_report(normalize_timing(b.reports), ReportFormat::Json));
}

TEST_CASE("parallel campaigns preserve report order and content") {
  CampaignConfig cfg = small_campaign();
  auto seq = run_campaign(cfg);
  cfg.jobs = 4;
  auto par = run_campaign(cfg);
  CHECK(emit_report(normalize_timing(seq.reports), ReportFormat::Json) ==
        emit_report(normalize_timing(par.reports), ReportFormat::Json));
}

TEST_CASE("campaign configuration is validated") {
  CampaignConfig empty;
  CHECK_THROWS_AS(run_campaign(empty), ConfigError);

  CampaignConfig unknown = small_campaign();
  unknown.cases = {"no-such-case"};
  CHECK_THROWS_AS(run_campaign(unknown), UnknownCase);
}

TEST_CASE("replay reproduces recordings and honors labelings") {
  const CaseSpec& spec = find_case("password");
  auto [trace, input] = record_execution(spec.generator, spec.name,
                                         spec.fixture_seed);
  std::string trace_bytes = serialize_trace(trace);

  SUBCASE("no labeling reproduces the original") {
    ReplayResult r = replay_trace(trace_bytes, std::nullopt,
                                  AlignmentStrategy::Realign, 1);
    REQUIRE(r.completed);
    CHECK(r.input_text == "abc\nabc\n");
    CHECK(r.events.empty());
  }
  SUBCASE("a labeling file drives the reduction") {
    std::string labeling = serialize_labeling_positions({0, 1});
    ReplayResult r = replay_trace(trace_bytes, labeling,
                                  AlignmentStrategy::Realign, 1);
    REQUIRE(r.completed);
    CHECK(r.input_text == "c\nc\n");
  }
  SUBCASE("corrupted trace files raise parse errors") {
    CHECK_THROWS_AS(replay_trace("{\"version\"", std::nullopt,
                                 AlignmentStrategy::Halt, 1),
                    ParseError);
  }
  SUBCASE("unregistered generators are rejected") {
    Trace foreign = trace;
    foreign.generator_id = "not-registered";
    CHECK_THROWS_AS(replay_trace(serialize_trace(foreign), std::nullopt,
                                 AlignmentStrategy::Halt, 1),
                    UnknownCase);
  }
  SUBCASE("out-of-range labeling positions are rejected") {
    std::string labeling = serialize_labeling_positions({99});
    CHECK_THROWS_AS(replay_trace(trace_bytes, labeling,
                                 AlignmentStrategy::Halt, 1),
                    SchemaError);
  }
}

TEST_CASE("the shipped fixture trace replays to the motivating input") {
  std::string path = std::string(GREDUCE_SOURCE_DIR) +
                     "/fixtures/password_trace.json";
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  ReplayResult r = replay_trace(ss.str(), std::nullopt,
                                AlignmentStrategy::Realign, 1);
  REQUIRE(r.completed);
  CHECK(r.input_text == "abc\nabc\n");
}

TEST_CASE("empty report lists emit cleanly in both formats") {
  CHECK(emit_report({}, ReportFormat::Json) == "[]");
  std::string csv = emit_report({}, ReportFormat::Csv);
  CHECK(csv.find("version,case,") == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
}

TEST_CASE("pair-valued sizes survive the report round trip") {
  CampaignConfig cfg;
  cfg.cases = {"digraph"};
  cfg.searches = {SearchKind::TreeHdd};
  cfg.strategies = {AlignmentStrategy::Halt};
  cfg.seeds = {find_case("digraph").fixture_seed};
  auto outcome = run_campaign(cfg);
  REQUIRE(outcome.reports.size() == 1);
  CHECK(outcome.reports[0].size_original.kind == SizeMeasure::Kind::NodesEdges);
  std::string a = emit_report(outcome.reports, ReportFormat::Json);
  CHECK(emit_report(parse_report_json(a), ReportFormat::Json) == a);
}

TEST_CASE("replay reports halted outcomes") {
  // Breaking a value dependency under the halt strategy stops the replay.
  const CaseSpec& spec = find_case("digraph");
  auto [trace, input] = record_execution(spec.generator, spec.name,
                                         spec.fixture_seed);
  TraceTree tree = build_trace_tree(trace);
  std::vector<NodeId> units = removable_units(tree);
  // Find a single unit whose removal halts.
  for (size_t i = 0; i < units.size(); ++i) {
    std::string labeling = serialize_labeling_positions({static_cast<int>(i)});
    ReplayResult r = replay_trace(serialize_trace(trace), labeling,
                                  AlignmentStrategy::Halt, 1);
    if (!r.completed) {
      CHECK(!r.events.empty());
      CHECK(describe_event(r.events[0]).find("halted") != std::string::npos);
      return;
    }
  }
  FAIL("no single-unit removal halted the graph replay");
}
