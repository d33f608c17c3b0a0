// Copyright 2026 The Trilinear Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "trilinear/metrics.hpp"
#include "trilinear/protocol.hpp"
#include "trilinear/router.hpp"
#include "trilinear/scheduler.hpp"
#include "trilinear/topology.hpp"

namespace trilinear {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Everything a CLI run needs besides its input files.
struct RunConfig {
  GridSpec grid{4, 4};
  Length pitch = Length::nm(100.0);
  bool loop = false;
  int m_rows = 1;
  MuxConfig mux;
  FidelityModel fidelity;
  ProtocolConfig protocol;
  /// 0 picks one sensor per C/2 dots.
  int set_spacing = 0;
  Durations durations;
  Length tsv_pitch = Length::um(0.8);
  DefectMap defects;
  std::uint64_t seed = 0;

  TrilinearLayout layout() const { return map_to_trilinear(grid, pitch, loop, m_rows); }
  /// Throws InvalidConfig naming the offending field.
  void validate() const;
};

/// Throws ParseError (with line and column) for malformed JSON and
/// InvalidConfig for bad fields.
Json parse_json(const std::string& text, const std::string& source = "input");
Json read_json_file(const std::string& path);

RunConfig config_from_json(const Json& j);
Json config_to_json(const RunConfig& config);

Json site_to_json(SiteCoord site);
SiteCoord site_from_json(const Json& j);
Json cell_to_json(Cell cell);
Cell cell_from_json(const Json& j);

Json layout_to_json(const TrilinearLayout& layout);
/// Rebuilds the layout and checks any listed site assignments against it.
TrilinearLayout layout_from_json(const Json& j);
std::string layout_to_csv(const TrilinearLayout& layout);

Json defects_to_json(const DefectMap& defects);
DefectMap defects_from_json(const Json& j);

Json micro_op_to_json(const MicroOp& op);
MicroOp micro_op_from_json(const Json& j);
Json plan_to_json(const ShuttlePlan& plan);
ShuttlePlan plan_from_json(const Json& j);
std::string plan_to_csv(const ShuttlePlan& plan);

Json circuit_to_json(const Circuit& circuit);
Circuit circuit_from_json(const Json& j);

struct ScheduleSummary {
  std::size_t ops = 0;
  std::size_t makespan = 0;
  int shuttle_steps = 0;
  std::size_t max_waveforms = 0;
  std::size_t violations = 0;
  double fidelity = 1.0;
};

ScheduleSummary summarize(const Circuit& circuit, const Schedule& schedule,
                          const TrilinearLayout& layout, const DefectMap& defects,
                          const MuxConfig& mux, const FidelityModel& fidelity);
Json schedule_to_json(const Schedule& schedule, const ScheduleSummary& summary);
std::string summary_to_csv(const ScheduleSummary& summary);

Json event_to_json(const ProtocolEvent& event);
std::string events_to_json_lines(std::span<const ProtocolEvent> events);
std::string events_to_csv(std::span<const ProtocolEvent> events);

Json scaling_to_json(std::span<const ScalingPoint> points);
std::string scaling_to_csv(std::span<const ScalingPoint> points);

Json error_document(const std::string& code, const std::string& message);

}  // namespace trilinear
