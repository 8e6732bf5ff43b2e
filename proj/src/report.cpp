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

#include "greduce/report.hpp"

#include <atomic>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "greduce/cases.hpp"
#include "greduce/error.hpp"
#include "greduce/trace_io.hpp"

namespace greduce {

namespace {

using Json = nlohmann::json;

Json size_to_json(const SizeMeasure& s) {
  Json j;
  if (s.kind == SizeMeasure::Kind::Scalar) {
    j["kind"] = "scalar";
    j["value"] = s.a;
  } else {
    j["kind"] = "nodes_edges";
    j["nodes"] = s.a;
    j["edges"] = s.b;
  }
  return j;
}

SizeMeasure size_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw SchemaError("size must be an object with a \"kind\"");
  if (j["kind"] == "scalar") return SizeMeasure::scalar(j.at("value").get<std::int64_t>());
  if (j["kind"] == "nodes_edges")
    return SizeMeasure::nodes_edges(j.at("nodes").get<std::int64_t>(),
                                    j.at("edges").get<std::int64_t>());
  throw SchemaError("unknown size kind");
}

// CSV cell for a size: scalar as-is, pairs as "nodes:edges" to stay
// comma-free.
std::string size_csv(const SizeMeasure& s) {
  if (s.kind == SizeMeasure::Kind::Scalar) return std::to_string(s.a);
  return std::to_string(s.a) + ":" + std::to_string(s.b);
}

std::string double_repr(double v) {
  // Reuse the JSON shortest-round-trip rendering so CSV and JSON agree.
  return Json(v).dump();
}

const char* kCsvHeader =
    "version,case,search,strategy,seed,realign_seed,timeout,size_original,"
    "size_final,quality,wall_time,property_tests,speed,validity_rate,"
    "halted_candidates,prog_mismatches,dec_mismatches,timed_out,result_digest";

}  // namespace

CampaignOutcome run_campaign(const CampaignConfig& config) {
  std::vector<std::string> case_names = config.cases;
  if (case_names.size() == 1 && case_names[0] == "all") {
    case_names.clear();
    for (const CaseSpec& c : case_registry())
      if (c.reduction_case) case_names.push_back(c.name);
  }
  if (case_names.empty() || config.searches.empty() ||
      config.strategies.empty() || config.seeds.empty())
    throw ConfigError("empty campaign cross product");
  for (const std::string& name : case_names) find_case(name);  // UnknownCase

  struct Cell {
    std::string case_name;
    SearchKind search;
    AlignmentStrategy strategy;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const std::string& name : case_names)
    for (SearchKind search : config.searches)
      for (AlignmentStrategy strategy : config.strategies)
        for (std::uint64_t seed : config.seeds)
          cells.push_back(Cell{name, search, strategy, seed});

  CampaignOutcome outcome;
  outcome.reports.resize(cells.size());
  std::vector<char> sound(cells.size(), 1);

  auto run_cell = [&](size_t i) {
    const Cell& cell = cells[i];
    const CaseSpec& spec = find_case(cell.case_name);
    SearchConfig sc;
    sc.search = cell.search;
    sc.strategy = cell.strategy;
    sc.seed = cell.seed;
    sc.realign_seed = config.realign_seed.value_or(cell.seed);
    sc.timeout_seconds = config.timeout_seconds;
    ReductionResult result =
        greduce(spec.generator, spec.name, cell.seed, spec.property, sc,
                spec.validity, spec.size_fn);
    result.metrics.case_name = cell.case_name;
    sound[i] = spec.property(result.final_input) ? 1 : 0;
    outcome.reports[i] = std::move(result.metrics);
  };

  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (size_t i = 0; i < cells.size(); ++i) run_cell(i);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> workers;
    for (int t = 0; t < jobs; ++t) {
      workers.emplace_back([&] {
        for (;;) {
          size_t i = next.fetch_add(1);
          if (i >= cells.size()) return;
          run_cell(i);
        }
      });
    }
    for (auto& w : workers) w.join();
  }
  for (char s : sound)
    if (!s) outcome.all_sound = false;
  return outcome;
}

std::string emit_report(const std::vector<ReductionReport>& reports,
                        ReportFormat format) {
  if (format == ReportFormat::Json) {
    Json arr = Json::array();
    for (const ReductionReport& r : reports) {
      Json j;
      j["version"] = kReportFormatVersion;
      j["case"] = r.case_name;
      j["search"] = r.search;
      j["strategy"] = r.strategy;
      j["seed"] = r.seed;
      j["realign_seed"] = r.realign_seed;
      j["timeout"] = r.timeout_seconds;
      j["size_original"] = size_to_json(r.size_original);
      j["size_final"] = size_to_json(r.size_final);
      j["quality"] = r.quality;
      j["wall_time"] = r.wall_time;
      j["property_tests"] = r.property_tests;
      j["speed"] = r.speed;
      j["validity_rate"] = r.validity_rate;
      j["halted_candidates"] = r.halted_candidates;
      j["prog_mismatches"] = r.prog_mismatches;
      j["dec_mismatches"] = r.dec_mismatches;
      j["timed_out"] = r.timed_out;
      j["result_digest"] = r.result_digest;
      arr.push_back(std::move(j));
    }
    return arr.dump();
  }
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const ReductionReport& r : reports) {
    out << kReportFormatVersion << ',' << r.case_name << ',' << r.search << ','
        << r.strategy << ',' << r.seed << ',' << r.realign_seed << ','
        << double_repr(r.timeout_seconds) << ',' << size_csv(r.size_original)
        << ',' << size_csv(r.size_final) << ',' << double_repr(r.quality)
        << ',' << double_repr(r.wall_time) << ',' << r.property_tests << ','
        << double_repr(r.speed) << ',' << double_repr(r.validity_rate) << ','
        << r.halted_candidates << ',' << r.prog_mismatches << ','
        << r.dec_mismatches << ',' << (r.timed_out ? "true" : "false") << ','
        << r.result_digest << "\n";
  }
  return out.str();
}

std::vector<ReductionReport> parse_report_json(const std::string& bytes) {
  Json arr;
  try {
    arr = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  if (!arr.is_array()) throw SchemaError("report document must be an array");
  std::vector<ReductionReport> out;
  for (const Json& j : arr) {
    if (!j.is_object() || j.value("version", "") != kReportFormatVersion)
      throw SchemaError("unsupported report version");
    ReductionReport r;
    r.case_name = j.at("case").get<std::string>();
    r.search = j.at("search").get<std::string>();
    r.strategy = j.at("strategy").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.realign_seed = j.at("realign_seed").get<std::uint64_t>();
    r.timeout_seconds = j.at("timeout").get<double>();
    r.size_original = size_from_json(j.at("size_original"));
    r.size_final = size_from_json(j.at("size_final"));
    r.quality = j.at("quality").get<double>();
    r.wall_time = j.at("wall_time").get<double>();
    r.property_tests = j.at("property_tests").get<std::int64_t>();
    r.speed = j.at("speed").get<double>();
    r.validity_rate = j.at("validity_rate").get<double>();
    r.halted_candidates = j.at("halted_candidates").get<std::int64_t>();
    r.prog_mismatches = j.at("prog_mismatches").get<std::int64_t>();
    r.dec_mismatches = j.at("dec_mismatches").get<std::int64_t>();
    r.timed_out = j.at("timed_out").get<bool>();
    r.result_digest = j.at("result_digest").get<std::string>();
    out.push_back(std::move(r));
  }
  return out;
}

ReplayResult replay_trace(const std::string& trace_bytes,
                          const std::optional<std::string>& labeling_bytes,
                          AlignmentStrategy strategy,
                          std::uint64_t realign_seed) {
  Trace trace = deserialize_trace(trace_bytes);
  const CaseSpec* spec = nullptr;
  for (const CaseSpec& c : case_registry()) {
    if (c.name == trace.generator_id) {
      spec = &c;
      break;
    }
  }
  if (spec == nullptr)
    throw UnknownCase("trace generator \"" + trace.generator_id +
                      "\" is not registered");
  TraceTree tree = build_trace_tree(trace);
  RemovalLabeling labeling;
  if (labeling_bytes) {
    std::vector<NodeId> units = removable_units(tree);
    for (int pos : deserialize_labeling_positions(*labeling_bytes)) {
      if (pos < 0 || static_cast<size_t>(pos) >= units.size())
        throw SchemaError("labeling position " + std::to_string(pos) +
                          " out of range");
      labeling.removed.insert(units[static_cast<size_t>(pos)]);
    }
  }
  ReexecOutcome out = aligned_reexecution(spec->generator,
                                          ReducedTrace{&tree, labeling},
                                          strategy, realign_seed);
  ReplayResult res;
  res.completed = out.completed();
  res.events = out.events;
  res.effective_labeling = out.effective_labeling;
  if (out.completed()) {
    res.input_text = out.input.text;
    res.size = out.input.size;
  }
  return res;
}

std::string describe_event(const MisalignmentEvent& event) {
  std::string s = event.kind == MisalignmentKind::ProgMismatch
                      ? "prog-mismatch"
                      : "dec-mismatch";
  s += " at ";
  if (event.at.frames.empty()) s += "<root>";
  for (size_t i = 0; i < event.at.frames.size(); ++i) {
    if (i > 0) s += "/";
    s += event.at.frames[i].site + ":" +
         std::to_string(event.at.frames[i].occurrence);
  }
  switch (event.action) {
    case MisalignmentEvent::Action::Halted: s += " -> halted"; break;
    case MisalignmentEvent::Action::BypassedUnit:
      s += " -> bypassed unit " + std::to_string(event.bypassed_unit);
      break;
    case MisalignmentEvent::Action::RealignedFreshValue:
      s += " -> realigned with a fresh value";
      break;
  }
  return s;
}

}  // namespace greduce
