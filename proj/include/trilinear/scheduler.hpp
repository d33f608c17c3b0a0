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

#include <array>
#include <bitset>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trilinear/router.hpp"
#include "trilinear/topology.hpp"

namespace trilinear {

/// AC waveform classes routed by the switch matrix. Conveyor shuttling drives
/// four phases; reverse-direction conveyors get their own four.
enum class Waveform : std::uint8_t {
  ShuttlePhase1,
  ShuttlePhase2,
  ShuttlePhase3,
  ShuttlePhase4,
  ShuttleReversePhase1,
  ShuttleReversePhase2,
  ShuttleReversePhase3,
  ShuttleReversePhase4,
  HopPulse,
  OneQubitDrive,
  TwoQubitPulse,
  ReadoutPulse,
  Compensation,
};

inline constexpr std::size_t kWaveformCount = 13;
using WaveformSet = std::bitset<kWaveformCount>;

std::string_view to_string(Waveform w);
Waveform waveform_from_string(std::string_view name);
WaveformSet waveform_set(std::initializer_list<Waveform> ws);
std::vector<Waveform> members(const WaveformSet& set);

/// Classes a micro-op needs while it runs.
WaveformSet waveforms_for(const MicroOp& op);

inline constexpr std::size_t kUnlimitedInputs = std::numeric_limits<std::size_t>::max();

struct MuxConfig {
  std::size_t n_ac_inputs = 16;
  int n_dc_inputs = 1;
  int gates_per_dc_input = 300;
  double dc_refresh_interval_s = 1.0;
  double dc_hold_time_s = 3600.0;
  /// When set, readout pulses may not share a tick with conveyor shuttling.
  bool readout_exclusive = false;

  /// Throws InvalidConfig.
  void validate() const;
  bool operator==(const MuxConfig&) const = default;
};

enum class GateKind { OneQubit, TwoQubit, Measure };

struct LogicalOp {
  GateKind kind = GateKind::OneQubit;
  std::vector<Cell> cells;
  double param = 0.0;
};

struct Circuit {
  std::vector<LogicalOp> ops;
  /// Extra (before, after) ordering edges on top of per-qubit program order.
  std::vector<std::pair<std::size_t, std::size_t>> deps;
};

struct TickEntry {
  int task = -1;
  int qubit = -1;
  MicroOp op;
  /// Tick index inside a multi-tick micro-op.
  int offset = 0;
  WaveformSet drive;

  bool operator==(const TickEntry&) const = default;
};

struct Tick {
  std::vector<TickEntry> entries;
  WaveformSet classes;

  bool operator==(const Tick&) const = default;
};

struct Schedule {
  std::vector<Tick> ticks;
  /// Starting dot of every qubit resident in the array.
  std::map<int, SiteCoord> homes;
  /// Qubits touched by each logical op, in circuit order.
  std::vector<std::vector<int>> task_qubits;
  std::vector<std::pair<std::size_t, std::size_t>> deps;

  std::size_t makespan() const { return ticks.size(); }
  int total_shuttle_steps() const;
  bool operator==(const Schedule&) const = default;
};

enum class ViolationKind { Occupancy, SwapThrough, DeadSite, Ordering, Mux, ChainBreak };

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  int tick = -1;
  std::string detail;
};

struct CompileOptions {
  Durations durations;
};

/// Greedy list scheduling. Logical ops are placed in circuit order, each at the
/// earliest tick where its whole micro-op timeline fits the space-time
/// reservations left by ops already placed. The pass is repeated with every
/// smaller AC-input budget and the shortest result kept, together with the
/// serial order, so makespan never grows as inputs are added.
Schedule compile(const Circuit& circuit, const TrilinearLayout& layout,
                 const DefectMap& defects, const MuxConfig& mux,
                 const CompileOptions& options = {});

/// Fully serialized reference: every logical op starts after the previous ends.
Schedule compile_serial(const Circuit& circuit, const TrilinearLayout& layout,
                        const DefectMap& defects, const MuxConfig& mux,
                        const CompileOptions& options = {});

/// Minimum makespan by exhaustive search over start ticks. Limited to at most
/// four logical ops on layouts no longer than 12 dots.
std::size_t optimal_makespan(const Circuit& circuit, const TrilinearLayout& layout,
                             const DefectMap& defects, const MuxConfig& mux,
                             const CompileOptions& options = {});

/// Seeded mix of 1q, 2q (grid neighbors or any supported pair) and measurement
/// ops on cells that survive reconfiguration. Measured cells are not reused.
Circuit random_circuit(const TrilinearLayout& layout, const DefectMap& defects,
                       std::size_t n_ops, std::uint64_t seed);

/// Replays the schedule tick by tick and reports every rule it breaks.
std::vector<Violation> validate_schedule(const Schedule& schedule, const TrilinearLayout& layout,
                                         const DefectMap& defects, const MuxConfig& mux);

struct DcRefreshReport {
  double cycle_time_s = 0.0;
  bool feasible = false;
  long long max_gates_per_input = 0;
  long long gates_per_input = 0;
};

DcRefreshReport dc_refresh_plan(const MuxConfig& mux, long long n_gates);

struct WaveformUsage {
  /// Per tick: how many entries drive each class.
  std::vector<std::array<int, kWaveformCount>> histogram;
  std::vector<std::size_t> distinct;
  std::size_t max_distinct = 0;
};

WaveformUsage waveform_usage(const Schedule& schedule);

}  // namespace trilinear
