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

#include "trilinear/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trilinear/error.hpp"
#include "trilinear/site_graph.hpp"

namespace trilinear {

namespace {

const std::vector<PhaseEntry> kNoPhases;
const std::vector<Rotation> kNoRotations;

void require_depth0(SiteCoord site) {
  if (site.depth != 0) {
    throw Error(ErrorCode::InvalidSite, "protocol runs on depth-0 dots only, got " + to_string(site));
  }
}

}  // namespace

FreqClass site_class(SiteCoord site) {
  return site.axis % 2 == 0 ? FreqClass::Nu1 : FreqClass::Nu2;
}

ArrayState::ArrayState(const TrilinearLayout& layout, DefectMap defects)
    : layout_(layout), defects_(std::move(defects)) {
  defects_.validate(layout_);
}

void ArrayState::place(int qubit, SiteCoord site) {
  require_depth0(site);
  if (!layout_.in_bounds(site) || defects_.site_dead(site)) {
    throw Error(ErrorCode::InvalidSite, "cannot place on " + to_string(site));
  }
  if (occupancy_.contains(site)) {
    throw Error(ErrorCode::InvalidSite, to_string(site) + " is already occupied");
  }
  if (positions_.contains(qubit)) {
    throw Error(ErrorCode::InvalidSite, "qubit " + std::to_string(qubit) + " already placed");
  }
  occupancy_[site] = qubit;
  positions_[qubit] = site;
}

void ArrayState::move(int qubit, SiteCoord to) {
  const SiteCoord from = position(qubit);
  require_depth0(to);
  if (!layout_.in_bounds(to) || defects_.site_dead(to) || occupancy_.contains(to) ||
      !lattice_adjacent(layout_, from, to) || defects_.barrier_dead(from, to)) {
    throw Error(ErrorCode::InvalidSite,
                "qubit " + std::to_string(qubit) + " cannot hop to " + to_string(to));
  }
  occupancy_.erase(from);
  occupancy_[to] = qubit;
  positions_[qubit] = to;
}

std::optional<int> ArrayState::occupant(SiteCoord site) const {
  auto it = occupancy_.find(site);
  if (it == occupancy_.end()) return std::nullopt;
  return it->second;
}

SiteCoord ArrayState::position(int qubit) const {
  auto it = positions_.find(qubit);
  if (it == positions_.end()) {
    throw Error(ErrorCode::InvalidSite, "no qubit " + std::to_string(qubit));
  }
  return it->second;
}

const std::vector<PhaseEntry>& ArrayState::z_ledger(int qubit) const {
  auto it = z_ledger_.find(qubit);
  return it == z_ledger_.end() ? kNoPhases : it->second;
}

const std::vector<Rotation>& ArrayState::rotation_log(int qubit) const {
  auto it = rotation_log_.find(qubit);
  return it == rotation_log_.end() ? kNoRotations : it->second;
}

double ArrayState::accumulated_phase(int qubit) const {
  double sum = 0.0;
  for (const auto& e : z_ledger(qubit)) {
    if (!e.compensation) sum += e.phase;
  }
  return sum;
}

double ArrayState::compensation_phase(int qubit) const {
  double sum = 0.0;
  for (const auto& e : z_ledger(qubit)) {
    if (e.compensation) sum += e.phase;
  }
  return sum;
}

double ArrayState::net_phase(int qubit) const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double net = std::fmod(accumulated_phase(qubit) + compensation_phase(qubit), two_pi);
  if (net < 0.0) net += two_pi;
  return net;
}

ArrayState init_half_filled(const TrilinearLayout& layout, const DefectMap& defects) {
  ArrayState state(layout, defects);
  int id = 0;
  for (Row row : {Row::Upper, Row::Lower}) {
    for (int axis = 0; axis < layout.length(); axis += 2) {
      const SiteCoord s{row, axis, 0};
      if (defects.site_dead(s)) continue;
      state.place(id++, s);
    }
  }
  return state;
}

EsrResult apply_global_esr(const ArrayState& state, FreqClass target_class,
                           const Rotation& rotation) {
  EsrResult out{state, {}};
  for (const auto& [q, site] : state.positions()) {
    if (site_class(site) == target_class) {
      out.state.record_rotation(q, rotation);
      out.rotated.insert(q);
    }
  }
  return out;
}

AddressedGate addressed_single_qubit_gate(const ArrayState& state, int qubit,
                                          const Rotation& rotation,
                                          const ProtocolConfig& config,
                                          const Durations& durations) {
  const TrilinearLayout& layout = state.layout();
  const SiteCoord home = state.position(qubit);
  if (home.row == Row::Middle || site_class(home) != FreqClass::Nu1) {
    throw Error(ErrorCode::InvalidSite,
                "qubit " + std::to_string(qubit) + " is not parked on a Nu1 dot");
  }

  std::optional<SiteCoord> park;
  for (int delta : {-1, 1}) {
    int axis = home.axis + delta;
    if (axis < 0 || axis >= layout.length()) {
      if (!layout.loop()) continue;
      axis = layout.wrap(axis);
    }
    const SiteCoord s{home.row, axis, 0};
    if (site_class(s) != FreqClass::Nu2 || state.defects().site_dead(s) ||
        state.defects().barrier_dead(home, s) || state.occupant(s)) {
      continue;
    }
    park = s;
    break;
  }
  if (!park) {
    throw Error(ErrorCode::NoAdjacentEmpty,
                "qubit " + std::to_string(qubit) + " has no empty Nu2 neighbor");
  }

  AddressedGate out{state, {}, {}, {}, qubit};
  int tick = 0;
  auto hop = [&](SiteCoord from, SiteCoord to) {
    out.state.move(qubit, to);
    const double phi = config.hop_phase(site_class(to));
    out.state.record_phase(qubit, {phi, false});
    out.state.record_phase(qubit, {-phi, true});
    out.ops.push_back({OpKind::HorizontalStep, from, to, durations.horizontal, site_class(to)});
    out.events.push_back({tick, to, qubit, "hop", 0.0});
    out.events.push_back({tick, to, qubit, "z_phase", phi});
    out.events.push_back({tick, to, qubit, "z_compensation", -phi});
    tick += durations.horizontal;
  };

  hop(home, *park);
  auto esr = apply_global_esr(out.state, FreqClass::Nu2, rotation);
  out.state = std::move(esr.state);
  out.rotated = std::move(esr.rotated);
  out.ops.push_back(
      {OpKind::SingleQubitPulse, *park, *park, durations.one_qubit, FreqClass::Nu2});
  out.events.push_back({tick, *park, qubit, "esr", rotation.angle});
  for (int q : out.rotated) {
    out.events.push_back({tick, out.state.position(q), q, "rotation", rotation.angle});
  }
  tick += durations.one_qubit;
  hop(*park, home);
  return out;
}

void ReadoutFixture::validate(const TrilinearLayout& layout) const {
  if (spacing < 1) throw Error(ErrorCode::InvalidConfig, "sensor spacing must be at least 1");
  for (const auto* side : {&upper, &lower}) {
    for (int a : *side) {
      if (a < 0 || a >= layout.length()) {
        throw Error(ErrorCode::InvalidConfig, "sensor axis " + std::to_string(a) + " out of range");
      }
    }
  }
}

ReadoutFixture default_fixture(const TrilinearLayout& layout, int spacing) {
  ReadoutFixture f;
  f.spacing = spacing;
  if (spacing < 1) throw Error(ErrorCode::InvalidConfig, "sensor spacing must be at least 1");
  for (int a = layout.length() > 1 ? 1 : 0; a < layout.length(); a += spacing) {
    f.upper.push_back(a);
    f.lower.push_back(a);
  }
  return f;
}

int default_set_spacing(const TrilinearLayout& layout) {
  return std::max(1, layout.grid().cols / 2);
}

ReadoutPlan readout(const ArrayState& state, int qubit, const ReadoutFixture& fixture,
                    const Durations& durations) {
  const TrilinearLayout& layout = state.layout();
  fixture.validate(layout);
  const SiteCoord home = state.position(qubit);
  require_depth0(home);

  const SiteGraph graph(layout, state.defects());
  std::vector<char> blocked(static_cast<std::size_t>(graph.node_count()), 0);
  for (const auto& [q, s] : state.positions()) {
    if (q != qubit) blocked[static_cast<std::size_t>(graph.index(s))] = 1;
  }
  std::vector<int> targets;
  for (const auto& [row, side] : {std::pair{Row::Upper, &fixture.upper},
                                  std::pair{Row::Lower, &fixture.lower}}) {
    for (int a : *side) {
      const int v = graph.index({row, a, 0});
      if (graph.usable(v)) targets.push_back(v);
    }
  }
  const auto path = shortest_path(graph, graph.index(home), targets, blocked);
  if (path.empty()) {
    throw Error(ErrorCode::Partitioned,
                "qubit " + std::to_string(qubit) + " cannot reach any readout sensor");
  }

  ReadoutPlan plan;
  plan.qubit = qubit;
  plan.sensor_site = graph.site(path.back());
  int tick = 0;
  auto step = [&](SiteCoord from, SiteCoord to) {
    const bool horizontal = from.row == to.row;
    MicroOp op{horizontal ? OpKind::HorizontalStep : OpKind::VerticalTransfer, from, to,
               horizontal ? durations.horizontal : durations.vertical, site_class(to)};
    plan.ops.push_back(op);
    plan.events.push_back({tick, to, qubit, "hop", 0.0});
    tick += op.duration_ticks;
  };
  for (std::size_t i = 1; i < path.size(); ++i) {
    const SiteCoord from = graph.site(path[i - 1]);
    const SiteCoord to = graph.site(path[i]);
    if (from.row == to.row) ++plan.steps;
    step(from, to);
  }
  plan.ops.push_back({OpKind::Readout, plan.sensor_site, plan.sensor_site, durations.readout,
                      site_class(plan.sensor_site)});
  plan.events.push_back({tick, plan.sensor_site, qubit, "readout", 0.0});
  tick += durations.readout;
  for (std::size_t i = path.size() - 1; i > 0; --i) {
    step(graph.site(path[i]), graph.site(path[i - 1]));
  }
  return plan;
}

}  // namespace trilinear
