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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "trilinear/router.hpp"
#include "trilinear/topology.hpp"

namespace trilinear {

/// Nanomagnet pattern: even axes sit under a magnet (Nu1), odd axes do not.
/// The Middle row follows the same parity.
FreqClass site_class(SiteCoord site);

struct Rotation {
  std::string axis = "x";
  double angle = 0.0;

  bool operator==(const Rotation&) const = default;
};

struct PhaseEntry {
  double phase = 0.0;
  bool compensation = false;

  bool operator==(const PhaseEntry&) const = default;
};

class ArrayState {
 public:
  explicit ArrayState(const TrilinearLayout& layout, DefectMap defects = {});

  const TrilinearLayout& layout() const { return layout_; }
  const DefectMap& defects() const { return defects_; }

  /// Puts a new qubit on an empty depth-0 dot. Throws InvalidSite.
  void place(int qubit, SiteCoord site);
  /// Moves a resident qubit to an adjacent empty dot. Throws InvalidSite.
  void move(int qubit, SiteCoord to);

  std::optional<int> occupant(SiteCoord site) const;
  SiteCoord position(int qubit) const;
  bool contains(int qubit) const { return positions_.contains(qubit); }
  std::size_t qubit_count() const { return positions_.size(); }

  const std::map<SiteCoord, int>& occupancy() const { return occupancy_; }
  const std::map<int, SiteCoord>& positions() const { return positions_; }

  void record_phase(int qubit, PhaseEntry entry) { z_ledger_[qubit].push_back(entry); }
  void record_rotation(int qubit, Rotation r) { rotation_log_[qubit].push_back(r); }

  const std::vector<PhaseEntry>& z_ledger(int qubit) const;
  const std::vector<Rotation>& rotation_log(int qubit) const;
  double accumulated_phase(int qubit) const;
  double compensation_phase(int qubit) const;
  /// Accumulated plus compensation, reduced onto [0, 2pi).
  double net_phase(int qubit) const;

 private:
  TrilinearLayout layout_;
  DefectMap defects_;
  std::map<SiteCoord, int> occupancy_;
  std::map<int, SiteCoord> positions_;
  std::map<int, std::vector<PhaseEntry>> z_ledger_;
  std::map<int, std::vector<Rotation>> rotation_log_;
};

struct ProtocolConfig {
  /// Z phase picked up by a hop, keyed by the class of the destination dot.
  double hop_phase_nu1 = 0.0;
  double hop_phase_nu2 = 0.0;

  double hop_phase(FreqClass dest) const {
    return dest == FreqClass::Nu1 ? hop_phase_nu1 : hop_phase_nu2;
  }
  bool operator==(const ProtocolConfig&) const = default;
};

/// One qubit on every Nu1 dot of both outer rows. Ids run along Upper, then
/// along Lower, by axis.
ArrayState init_half_filled(const TrilinearLayout& layout, const DefectMap& defects = {});

struct EsrResult {
  ArrayState state;
  std::set<int> rotated;
};

EsrResult apply_global_esr(const ArrayState& state, FreqClass target_class,
                           const Rotation& rotation);

struct ProtocolEvent {
  int tick = 0;
  SiteCoord site;
  int qubit = -1;
  std::string kind;
  double value = 0.0;

  bool operator==(const ProtocolEvent&) const = default;
};

struct AddressedGate {
  ArrayState state;
  std::vector<MicroOp> ops;
  std::vector<ProtocolEvent> events;
  /// Qubits the ESR pulse actually rotated.
  std::set<int> rotated;
  int target = -1;

  bool addressed_exactly() const { return rotated == std::set<int>{target}; }
};

/// Hop to an empty neighboring Nu2 dot (left first), pulse the global ESR at
/// Nu2, hop back. Throws InvalidSite when the qubit is not on a Nu1 dot and
/// NoAdjacentEmpty when neither Nu2 neighbor is free.
AddressedGate addressed_single_qubit_gate(const ArrayState& state, int qubit,
                                          const Rotation& rotation,
                                          const ProtocolConfig& config = {},
                                          const Durations& durations = {});

struct ReadoutFixture {
  /// Axes carrying a charge sensor beside the Upper and Lower rows.
  std::vector<int> upper;
  std::vector<int> lower;
  int spacing = 1;

  /// Throws InvalidConfig.
  void validate(const TrilinearLayout& layout) const;
};

/// Sensors every `spacing` axes on both sides, starting at axis 1 so they sit
/// beside Nu2 dots, which stay free in a half-filled array.
ReadoutFixture default_fixture(const TrilinearLayout& layout, int spacing);

/// One sensor per C/2 outer dots.
int default_set_spacing(const TrilinearLayout& layout);

struct ReadoutPlan {
  int qubit = -1;
  SiteCoord sensor_site;
  std::vector<MicroOp> ops;
  /// Horizontal steps one way.
  int steps = 0;
  std::vector<ProtocolEvent> events;
};

/// Shuttles the qubit to the nearest free sensor dot around the other qubits,
/// reads out, and returns. Throws Partitioned when no sensor is reachable.
ReadoutPlan readout(const ArrayState& state, int qubit, const ReadoutFixture& fixture,
                    const Durations& durations = {});

}  // namespace trilinear
