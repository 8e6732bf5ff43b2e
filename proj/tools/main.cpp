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

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "greduce/cases.hpp"
#include "greduce/report.hpp"
#include "greduce/trace_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitUnsound = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw greduce::IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw greduce::IoError("cannot write " + path);
  out << bytes;
}

greduce::SearchKind parse_search(const std::string& s) {
  if (s == "powerset") return greduce::SearchKind::Powerset;
  if (s == "seq") return greduce::SearchKind::SequenceDdmin;
  if (s == "tree") return greduce::SearchKind::TreeHdd;
  throw greduce::ConfigError("unknown search \"" + s + "\"");
}

greduce::AlignmentStrategy parse_strategy(const std::string& s) {
  if (s == "halt") return greduce::AlignmentStrategy::Halt;
  if (s == "bypass") return greduce::AlignmentStrategy::Bypass;
  if (s == "realign") return greduce::AlignmentStrategy::Realign;
  throw greduce::ConfigError("unknown strategy \"" + s + "\"");
}

int cmd_run(const std::vector<std::string>& cases,
            const std::vector<std::string>& searches,
            const std::vector<std::string>& strategies,
            const std::vector<std::uint64_t>& seeds,
            std::optional<std::uint64_t> realign_seed, double timeout,
            int jobs, const std::string& report_path,
            const std::string& format) {
  greduce::CampaignConfig config;
  config.cases = cases;
  for (const auto& s : searches) config.searches.push_back(parse_search(s));
  for (const auto& s : strategies)
    config.strategies.push_back(parse_strategy(s));
  config.seeds = seeds;
  config.realign_seed = realign_seed;
  config.timeout_seconds = timeout;
  config.jobs = jobs;

  greduce::CampaignOutcome outcome = greduce::run_campaign(config);
  greduce::ReportFormat fmt = format == "csv" ? greduce::ReportFormat::Csv
                                              : greduce::ReportFormat::Json;
  std::string rendered = greduce::emit_report(outcome.reports, fmt);
  if (!report_path.empty())
    write_file(report_path, rendered);
  else
    std::cout << rendered << "\n";

  for (const auto& r : outcome.reports) {
    std::cerr << r.case_name << " " << r.search << " " << r.strategy
              << " seed=" << r.seed << ": "
              << greduce::size_to_string(r.size_original) << " -> "
              << greduce::size_to_string(r.size_final) << " in "
              << r.property_tests << " tests" << (r.timed_out ? " (timeout)" : "")
              << "\n";
  }
  return outcome.all_sound ? kExitOk : kExitUnsound;
}

int cmd_list_cases() {
  for (const auto& c : greduce::case_registry()) {
    std::cout << c.name << (c.reduction_case ? "" : " (demo only)")
              << (c.dependency_bearing ? " [dependency-bearing]" : "") << "\n";
  }
  return kExitOk;
}

int cmd_record(const std::string& case_name, std::uint64_t seed,
               const std::string& out_path) {
  const greduce::CaseSpec& spec = greduce::find_case(case_name);
  auto [trace, input] =
      greduce::record_execution(spec.generator, spec.name, seed);
  std::string bytes = greduce::serialize_trace(trace);
  if (!out_path.empty())
    write_file(out_path, bytes);
  else
    std::cout << bytes << "\n";
  std::cerr << case_name << " seed=" << seed << ": " << trace.decisions.size()
            << " decisions, size " << greduce::size_to_string(input.size)
            << "\n";
  return kExitOk;
}

int cmd_replay(const std::string& trace_path, const std::string& labeling_path,
               const std::string& strategy, std::uint64_t realign_seed) {
  std::string trace_bytes = read_file(trace_path);
  std::optional<std::string> labeling_bytes;
  if (!labeling_path.empty()) labeling_bytes = read_file(labeling_path);
  greduce::ReplayResult res = greduce::replay_trace(
      trace_bytes, labeling_bytes, parse_strategy(strategy), realign_seed);
  for (const auto& e : res.events)
    std::cerr << greduce::describe_event(e) << "\n";
  if (!res.completed) {
    std::cerr << "halted\n";
    return kExitOk;
  }
  std::cout << res.input_text;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generator-trace reduction toolkit"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a reduction campaign");
  std::vector<std::string> cases{"all"};
  std::vector<std::string> searches{"tree"};
  std::vector<std::string> strategies{"realign"};
  std::vector<std::uint64_t> seeds;
  std::optional<std::uint64_t> realign_seed;
  double timeout = 300;
  int jobs = 1;
  std::string report_path, format = "json";
  run->add_option("--case", cases, "case names, or \"all\"")->capture_default_str();
  run->add_option("--search", searches, "powerset|seq|tree")->capture_default_str();
  run->add_option("--strategy", strategies, "halt|bypass|realign")->capture_default_str();
  run->add_option("--seed", seeds, "recording seeds")->required();
  std::uint64_t realign_seed_raw = 0;
  auto* rs = run->add_option("--realign-seed", realign_seed_raw,
                             "fresh-value seed (default: the recording seed)");
  run->add_option("--timeout", timeout, "per-cell timeout in seconds")->capture_default_str();
  run->add_option("--jobs", jobs, "parallel campaign cells")->capture_default_str();
  run->add_option("--report", report_path, "report output path (stdout when omitted)");
  run->add_option("--format", format, "json|csv")->capture_default_str();

  // list-cases
  auto* list = app.add_subcommand("list-cases", "list registered cases");

  // record
  auto* record = app.add_subcommand("record", "record a trace to a file");
  std::string record_case, record_out;
  std::uint64_t record_seed = 0;
  record->add_option("--case", record_case, "case name")->required();
  record->add_option("--seed", record_seed, "recording seed")->required();
  record->add_option("--out", record_out, "trace output path (stdout when omitted)");

  // replay
  auto* replay = app.add_subcommand("replay", "re-execute a recorded trace");
  std::string trace_path, labeling_path, replay_strategy = "realign";
  std::uint64_t replay_realign_seed = 0;
  replay->add_option("--trace", trace_path, "trace file")->required();
  replay->add_option("--labeling", labeling_path, "labeling file");
  replay->add_option("--strategy", replay_strategy, "halt|bypass|realign")->capture_default_str();
  replay->add_option("--realign-seed", replay_realign_seed, "fresh-value seed")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      if (rs->count() > 0) realign_seed = realign_seed_raw;
      return cmd_run(cases, searches, strategies, seeds, realign_seed, timeout,
                     jobs, report_path, format);
    }
    if (list->parsed()) return cmd_list_cases();
    if (record->parsed()) return cmd_record(record_case, record_seed, record_out);
    if (replay->parsed())
      return cmd_replay(trace_path, labeling_path, replay_strategy,
                        replay_realign_seed);
  } catch (const greduce::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const greduce::UnknownCase& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const greduce::PropertyNotExhibited& e) {
    // The chosen seed does not produce a bug-inducing input for the case.
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const greduce::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitConfig;
}
