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

#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "trilinear/topology.hpp"

namespace trilinear {

enum class OpKind {
  VerticalTransfer,
  HorizontalStep,
  TwoQubitGate,
  SingleQubitPulse,
  Readout,
  Idle,
};

std::string_view to_string(OpKind kind);
OpKind op_kind_from_string(std::string_view name);

/// Resonance class of a dot: Nu1 under a nanomagnet, Nu2 without.
enum class FreqClass { Nu1, Nu2 };

std::string_view to_string(FreqClass freq);

/// Tick counts per micro-op kind. One tick is one horizontal shuttle step.
struct Durations {
  int horizontal = 1;
  int vertical = 1;
  int two_qubit = 2;
  int one_qubit = 4;
  int readout = 10;
  /// Extra ticks per sub-row crossed inside an M-row block.
  int intra_block = 1;

  bool operator==(const Durations&) const = default;
};

/// One primitive action. Moves go `from` -> `to`; a TwoQubitGate acts between
/// the mover at `from` and the stationary `partner` qubit at `to`; other kinds
/// act in place with `to == from`.
struct MicroOp {
  OpKind kind = OpKind::Idle;
  SiteCoord from;
  SiteCoord to;
  int duration_ticks = 1;
  FreqClass freq = FreqClass::Nu1;
  int partner = -1;

  bool is_move() const {
    return kind == OpKind::VerticalTransfer || kind == OpKind::HorizontalStep;
  }
  bool operator==(const MicroOp&) const = default;
};

struct ShuttlePlan {
  int qubit = -1;
  std::optional<int> partner;
  std::vector<MicroOp> ops;
  int horizontal_steps = 0;
  int vertical_transfers = 0;
  bool one_way = false;

  int total_ticks() const;
  bool operator==(const ShuttlePlan&) const = default;
};

struct Reconfiguration {
  /// Outer dots that hosted a qubit and now serve as shuttling dots.
  std::set<SiteCoord> repurposed_sites;
  /// Cells lost to a dead dot or to repurposing.
  std::set<Cell> sacrificed_qubits;

  bool empty() const { return repurposed_sites.empty() && sacrificed_qubits.empty(); }
  bool operator==(const Reconfiguration&) const = default;
};

/// Minimum-hop path over usable, unblocked sites, inclusive of both ends.
/// Throws InvalidSite for unusable endpoints and Partitioned when no path exists.
std::vector<SiteCoord> shortest_shuttle_path(const TrilinearLayout& layout, SiteCoord from,
                                             SiteCoord to, const DefectMap& defects,
                                             const std::set<SiteCoord>& blocked = {});

/// Two-qubit gate between grid neighbors. Row neighbors interact in place;
/// column neighbors shuttle one qubit through the Middle row to the dot beside
/// its partner and back. `blocked` lists dots the mover may not enter (the
/// homes of idle qubits when scheduling); it is empty for a standalone plan.
ShuttlePlan vertical_gate_plan(const TrilinearLayout& layout, Cell a, Cell b,
                               const DefectMap& defects,
                               const std::set<SiteCoord>& blocked = {},
                               const Durations& durations = {});

/// Gates beyond nearest neighbors: any pair in the same grid row or in
/// neighboring rows, plus first/last-row pairs on loop layouts.
ShuttlePlan long_range_plan(const TrilinearLayout& layout, Cell a, Cell b,
                            const DefectMap& defects = {},
                            const std::set<SiteCoord>& blocked = {},
                            const Durations& durations = {});

/// Dispatches to vertical_gate_plan for grid neighbors and long_range_plan
/// otherwise.
ShuttlePlan two_qubit_plan(const TrilinearLayout& layout, Cell a, Cell b,
                           const DefectMap& defects,
                           const std::set<SiteCoord>& blocked = {},
                           const Durations& durations = {});

bool supported_pair(const TrilinearLayout& layout, Cell a, Cell b);

/// Static re-labeling of qubit dots as shuttling dots so that every surviving
/// qubit can reach every other around dead sites. Throws Unrecoverable when
/// defects sever the lattice into pieces that each hold qubits.
Reconfiguration reconfigure_for_defects(const TrilinearLayout& layout,
                                        const DefectMap& defects);

/// Home dots of all qubits that survive `reconfig`.
std::set<SiteCoord> live_qubit_sites(const TrilinearLayout& layout,
                                     const Reconfiguration& reconfig);

}  // namespace trilinear
