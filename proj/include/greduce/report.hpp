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

#include <optional>
#include <string>
#include <vector>

#include "greduce/gen.hpp"
#include "greduce/reduction.hpp"

namespace greduce {

inline constexpr const char* kReportFormatVersion = "greduce-report/1";

enum class ReportFormat { Json, Csv };

struct CampaignConfig {
  std::vector<std::string> cases;  // case names; "all" expands the registry
  std::vector<SearchKind> searches;
  std::vector<AlignmentStrategy> strategies;
  std::vector<std::uint64_t> seeds;
  double timeout_seconds = 300;
  /// Fresh-value seed for re-alignment; when unset, each cell reuses its
  /// recording seed.
  std::optional<std::uint64_t> realign_seed;
  int jobs = 1;
};

struct CampaignOutcome {
  std::vector<ReductionReport> reports;
  bool all_sound = true;  // every cell's final input satisfies its property
};

/// Runs every (case, search, strategy, seed) cell. Reports come back in
/// cross-product order regardless of --jobs. Throws ConfigError on an
/// empty cross product and UnknownCase for unregistered names.
CampaignOutcome run_campaign(const CampaignConfig& config);

/// Renders reports as a JSON array (stable key order) or CSV with a fixed
/// column order. Re-emission of identical reports is byte-identical.
std::string emit_report(const std::vector<ReductionReport>& reports,
                        ReportFormat format);

/// Parses a JSON report document back; emit(parse(emit(r))) == emit(r).
std::vector<ReductionReport> parse_report_json(const std::string& bytes);

struct ReplayResult {
  bool completed = false;
  std::string input_text;
  SizeMeasure size;
  std::vector<MisalignmentEvent> events;
  RemovalLabeling effective_labeling;
};

/// Re-executes a trace file's generator. Without a labeling this
/// reproduces the recorded input; with one it yields the aligned
/// re-execution outcome. The labeling document holds positions into the
/// tree's document-ordered removable-unit sequence.
ReplayResult replay_trace(const std::string& trace_bytes,
                          const std::optional<std::string>& labeling_bytes,
                          AlignmentStrategy strategy,
                          std::uint64_t realign_seed);

std::string describe_event(const MisalignmentEvent& event);

}  // namespace greduce
