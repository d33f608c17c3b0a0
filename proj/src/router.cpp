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

#include "trilinear/router.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "trilinear/error.hpp"
#include "trilinear/site_graph.hpp"

namespace trilinear {

std::string_view to_string(OpKind kind) {
  switch (kind) {
    case OpKind::VerticalTransfer: return "vertical";
    case OpKind::HorizontalStep: return "horizontal";
    case OpKind::TwoQubitGate: return "2q";
    case OpKind::SingleQubitPulse: return "1q";
    case OpKind::Readout: return "readout";
    case OpKind::Idle: return "idle";
  }
  return "idle";
}

OpKind op_kind_from_string(std::string_view name) {
  for (auto k : {OpKind::VerticalTransfer, OpKind::HorizontalStep, OpKind::TwoQubitGate,
                 OpKind::SingleQubitPulse, OpKind::Readout, OpKind::Idle}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::ParseError, "unknown micro-op kind '" + std::string(name) + "'");
}

std::string_view to_string(FreqClass freq) {
  return freq == FreqClass::Nu1 ? "nu1" : "nu2";
}

int ShuttlePlan::total_ticks() const {
  return std::accumulate(ops.begin(), ops.end(), 0,
                         [](int acc, const MicroOp& op) { return acc + op.duration_ticks; });
}

namespace {

std::vector<char> blocked_mask(const SiteGraph& graph, const std::set<SiteCoord>& blocked) {
  std::vector<char> mask(static_cast<std::size_t>(graph.node_count()), 0);
  for (const auto& s : blocked) {
    if (s.depth == 0 && s.axis >= 0 && s.axis < graph.length()) {
      mask[static_cast<std::size_t>(graph.index(s))] = 1;
    }
  }
  return mask;
}

MicroOp move_op(SiteCoord from, SiteCoord to, const Durations& d) {
  MicroOp op;
  op.from = from;
  op.to = to;
  if (from.row == to.row && from.depth == to.depth) {
    op.kind = OpKind::HorizontalStep;
    op.duration_ticks = d.horizontal;
  } else {
    op.kind = OpKind::VerticalTransfer;
    op.duration_ticks = d.vertical + std::max(from.depth, to.depth) * d.intra_block;
  }
  return op;
}

void tally(ShuttlePlan& plan) {
  plan.horizontal_steps = 0;
  plan.vertical_transfers = 0;
  for (const auto& op : plan.ops) {
    if (op.kind == OpKind::HorizontalStep) ++plan.horizontal_steps;
    if (op.kind == OpKind::VerticalTransfer) ++plan.vertical_transfers;
  }
}

/// Plan with `mover` travelling to a dot beside `partner`; nullopt when the
/// mover cannot get there.
std::optional<ShuttlePlan> plan_with_mover(const TrilinearLayout& layout, const SiteGraph& graph,
                                           const DefectMap& defects, Cell mover, Cell partner,
                                           std::vector<char> mask, const Durations& d) {
  const SiteCoord ms = layout.site_of(mover);
  const SiteCoord ps = layout.site_of(partner);
  const auto& grid = layout.grid();

  ShuttlePlan plan;
  plan.qubit = grid.qubit_id(mover);
  plan.partner = grid.qubit_id(partner);

  MicroOp gate;
  gate.kind = OpKind::TwoQubitGate;
  gate.partner = grid.qubit_id(partner);

  if (lattice_adjacent(layout, ms, ps) && !defects.barrier_dead(ms, ps)) {
    gate.from = ms;
    gate.to = ps;
    gate.duration_ticks = d.two_qubit;
    plan.ops.push_back(gate);
    return plan;
  }

  // The partner never moves; its dot is off limits and the mover's is free.
  if (ps.depth == 0) mask[static_cast<std::size_t>(graph.index(ps))] = 1;
  if (ms.depth == 0) mask[static_cast<std::size_t>(graph.index(ms))] = 0;

  auto free_node = [&](int v) { return graph.usable(v) && !mask[static_cast<std::size_t>(v)]; };

  std::vector<int> targets;
  const SiteCoord beside{Row::Middle, ps.axis, 0};
  const int beside_node = graph.index(beside);
  const SiteCoord ps_face{ps.row, ps.axis, 0};
  if (free_node(beside_node) && !defects.barrier_dead(beside, ps_face)) {
    targets.push_back(beside_node);
  } else if (ps.depth == 0) {
    for (int u : graph.neighbors(graph.index(ps))) {
      if (free_node(u)) targets.push_back(u);
    }
  }
  if (targets.empty()) return std::nullopt;

  std::vector<SiteCoord> route;
  if (ms.depth == 0) {
    const auto path = shortest_path(graph, graph.index(ms), targets, mask);
    if (path.empty()) return std::nullopt;
    for (int v : path) route.push_back(graph.site(v));
  } else {
    // Deep sub-row qubits leave their block straight into the Middle row.
    const int entry = graph.index({Row::Middle, ms.axis, 0});
    if (!free_node(entry)) return std::nullopt;
    const auto path = shortest_path(graph, entry, targets, mask);
    if (path.empty()) return std::nullopt;
    route.push_back(ms);
    for (int v : path) route.push_back(graph.site(v));
  }

  for (std::size_t i = 1; i < route.size(); ++i) {
    plan.ops.push_back(move_op(route[i - 1], route[i], d));
  }
  gate.from = route.back();
  gate.to = ps;
  gate.duration_ticks = d.two_qubit + ps.depth * d.intra_block;
  plan.ops.push_back(gate);
  for (std::size_t i = route.size() - 1; i > 0; --i) {
    plan.ops.push_back(move_op(route[i], route[i - 1], d));
  }
  tally(plan);
  return plan;
}

void require_alive(const TrilinearLayout& layout, const DefectMap& defects, Cell cell) {
  if (!layout.grid().contains(cell)) {
    throw Error(ErrorCode::InvalidSite, "cell " + to_string(cell) + " outside grid");
  }
  if (defects.site_dead(layout.site_of(cell))) {
    throw Error(ErrorCode::DeadQubit, "cell " + to_string(cell) + " sits on a dead dot");
  }
}

ShuttlePlan plan_either_way(const TrilinearLayout& layout, const DefectMap& defects, Cell a,
                            Cell b, const std::set<SiteCoord>& blocked, const Durations& d) {
  const SiteGraph graph(layout, defects);
  const auto mask = blocked_mask(graph, blocked);
  if (auto plan = plan_with_mover(layout, graph, defects, a, b, mask, d)) return *plan;
  if (auto plan = plan_with_mover(layout, graph, defects, b, a, mask, d)) return *plan;
  throw Error(ErrorCode::Partitioned,
              "no shuttle route joins " + to_string(a) + " and " + to_string(b));
}

}  // namespace

std::vector<SiteCoord> shortest_shuttle_path(const TrilinearLayout& layout, SiteCoord from,
                                             SiteCoord to, const DefectMap& defects,
                                             const std::set<SiteCoord>& blocked) {
  from.axis = layout.wrap(from.axis);
  to.axis = layout.wrap(to.axis);
  for (const auto& s : {from, to}) {
    if (!layout.in_bounds(s) || s.depth != 0) {
      throw Error(ErrorCode::InvalidSite, "site " + to_string(s) + " is not routable");
    }
    if (defects.site_dead(s) || blocked.contains(s)) {
      throw Error(ErrorCode::InvalidSite, "site " + to_string(s) + " is not usable");
    }
  }
  const SiteGraph graph(layout, defects);
  const auto mask = blocked_mask(graph, blocked);
  const int target = graph.index(to);
  const auto path = shortest_path(graph, graph.index(from), std::span<const int>(&target, 1), mask);
  if (path.empty()) {
    throw Error(ErrorCode::Partitioned,
                "no route from " + to_string(from) + " to " + to_string(to));
  }
  std::vector<SiteCoord> out;
  out.reserve(path.size());
  for (int v : path) out.push_back(graph.site(v));
  return out;
}

ShuttlePlan vertical_gate_plan(const TrilinearLayout& layout, Cell a, Cell b,
                               const DefectMap& defects, const std::set<SiteCoord>& blocked,
                               const Durations& durations) {
  require_alive(layout, defects, a);
  require_alive(layout, defects, b);
  const auto nbrs = neighbors_2d(layout.grid(), a);
  if (std::find(nbrs.begin(), nbrs.end(), b) == nbrs.end()) {
    throw Error(ErrorCode::NotNeighbors,
                to_string(a) + " and " + to_string(b) + " are not grid neighbors");
  }
  return plan_either_way(layout, defects, a, b, blocked, durations);
}

bool supported_pair(const TrilinearLayout& layout, Cell a, Cell b) {
  if (a == b) return false;
  const auto& grid = layout.grid();
  if (!grid.contains(a) || !grid.contains(b)) return false;
  const int dr = std::abs(a.row - b.row);
  if (dr <= 1) return true;
  return layout.loop() && dr == grid.rows - 1;
}

ShuttlePlan long_range_plan(const TrilinearLayout& layout, Cell a, Cell b,
                            const DefectMap& defects, const std::set<SiteCoord>& blocked,
                            const Durations& durations) {
  if (!supported_pair(layout, a, b)) {
    throw Error(ErrorCode::UnsupportedPair,
                "pair " + to_string(a) + "-" + to_string(b) + " is outside the supported classes");
  }
  require_alive(layout, defects, a);
  require_alive(layout, defects, b);
  return plan_either_way(layout, defects, a, b, blocked, durations);
}

ShuttlePlan two_qubit_plan(const TrilinearLayout& layout, Cell a, Cell b,
                           const DefectMap& defects, const std::set<SiteCoord>& blocked,
                           const Durations& durations) {
  for (const Cell& c : {a, b}) {
    if (!layout.grid().contains(c)) {
      throw Error(ErrorCode::InvalidSite, "cell (" + std::to_string(c.row) + "," +
                                              std::to_string(c.col) + ") is outside the grid");
    }
  }
  const auto nbrs = neighbors_2d(layout.grid(), a);
  if (std::find(nbrs.begin(), nbrs.end(), b) != nbrs.end()) {
    return vertical_gate_plan(layout, a, b, defects, blocked, durations);
  }
  return long_range_plan(layout, a, b, defects, blocked, durations);
}

namespace {

class ReconfigSolver {
 public:
  ReconfigSolver(const TrilinearLayout& layout, const DefectMap& defects)
      : graph_(layout, defects) {
    for (const auto& cell : layout.cells()) {
      const SiteCoord s = layout.site_of(cell);
      if (defects.site_dead(s)) {
        dead_cells_.insert(cell);
        continue;
      }
      const int anchor = graph_.index({s.row, s.axis, 0});
      if (s.depth == 0) {
        host_[anchor] = cell;
        live_.push_back({cell, anchor, true});
      } else {
        live_.push_back({cell, graph_.index({Row::Middle, s.axis, 0}), false});
      }
    }
  }

  const std::set<Cell>& dead_cells() const { return dead_cells_; }
  const SiteGraph& graph() const { return graph_; }

  std::optional<Cell> host(int node) const {
    auto it = host_.find(node);
    if (it == host_.end()) return std::nullopt;
    return it->second;
  }

  /// Throws Unrecoverable when live qubits fall into separate usable pieces
  /// that each contain Middle dots.
  void check_severing() const {
    const auto parts = components([&](int v) { return graph_.usable(v); });
    std::set<int> pieces;
    for (const auto& q : live_) {
      const int c = parts.label[static_cast<std::size_t>(q.anchor)];
      if (c >= 0 && parts.has_middle[static_cast<std::size_t>(c)]) pieces.insert(c);
    }
    if (pieces.size() > 1) {
      throw Error(ErrorCode::Unrecoverable,
                  "defects sever the array into " + std::to_string(pieces.size()) + " pieces");
    }
  }

  /// Qubits that cannot share a free region with the rest once `repurposed`
  /// cells give up their dots.
  std::set<Cell> unsatisfied(const std::set<Cell>& repurposed) const {
    std::vector<char> qubit_node(static_cast<std::size_t>(graph_.node_count()), 0);
    for (const auto& q : live_) {
      if (q.direct && !repurposed.contains(q.cell)) {
        qubit_node[static_cast<std::size_t>(q.anchor)] = 1;
      }
    }
    const auto comp = components([&](int v) {
      return graph_.usable(v) && !qubit_node[static_cast<std::size_t>(v)];
    }).label;

    std::vector<std::pair<Cell, std::set<int>>> touches;
    std::map<int, int> votes;
    for (const auto& q : live_) {
      if (repurposed.contains(q.cell)) continue;
      std::set<int> adj;
      if (q.direct) {
        for (int u : graph_.neighbors(q.anchor)) {
          const int c = comp[static_cast<std::size_t>(u)];
          if (c >= 0) adj.insert(c);
        }
      } else {
        const int c = comp[static_cast<std::size_t>(q.anchor)];
        if (c >= 0) adj.insert(c);
      }
      for (int c : adj) ++votes[c];
      touches.push_back({q.cell, std::move(adj)});
    }
    int main_comp = -1;
    int best = 0;
    for (const auto& [c, n] : votes) {
      if (n > best) {
        best = n;
        main_comp = c;
      }
    }
    std::set<Cell> out;
    for (const auto& [cell, adj] : touches) {
      if (!adj.contains(main_comp)) out.insert(cell);
    }
    return out;
  }

 private:
  struct LiveQubit {
    Cell cell;
    int anchor;
    bool direct;
  };

  struct Components {
    std::vector<int> label;
    std::vector<bool> has_middle;
  };

  template <typename Pred>
  Components components(Pred include) const {
    Components parts;
    auto& comp = parts.label;
    comp.assign(static_cast<std::size_t>(graph_.node_count()), -1);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < graph_.node_count(); ++s) {
      if (comp[static_cast<std::size_t>(s)] >= 0 || !include(s)) continue;
      bool middle = false;
      comp[static_cast<std::size_t>(s)] = next;
      stack.push_back(s);
      while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        middle = middle || graph_.site(v).row == Row::Middle;
        for (int u : graph_.neighbors(v)) {
          if (comp[static_cast<std::size_t>(u)] < 0 && include(u)) {
            comp[static_cast<std::size_t>(u)] = next;
            stack.push_back(u);
          }
        }
      }
      parts.has_middle.push_back(middle);
      ++next;
    }
    return parts;
  }

  SiteGraph graph_;
  std::set<Cell> dead_cells_;
  std::map<int, Cell> host_;
  std::vector<LiveQubit> live_;
};

}  // namespace

Reconfiguration reconfigure_for_defects(const TrilinearLayout& layout,
                                        const DefectMap& defects) {
  defects.validate(layout);
  Reconfiguration result;
  if (defects.empty()) return result;

  ReconfigSolver solver(layout, defects);
  solver.check_severing();
  const SiteGraph& graph = solver.graph();
  const int len = layout.length();

  // Candidate bypass windows: the outer dots flanking each break in the
  // Middle row.
  std::vector<std::set<int>> windows;
  auto add_window = [&](int lo, int hi) {
    for (Row row : {Row::Upper, Row::Lower}) {
      std::set<int> w;
      for (int a = lo; a <= hi; ++a) {
        if (!layout.loop() && (a < 0 || a >= len)) continue;
        const int node = graph.index({row, layout.wrap(a), 0});
        if (graph.usable(node)) w.insert(node);
      }
      if (!w.empty() && std::find(windows.begin(), windows.end(), w) == windows.end()) {
        windows.push_back(std::move(w));
      }
    }
  };
  for (const auto& s : defects.sites()) {
    if (s.row == Row::Middle) add_window(s.axis - 1, s.axis + 1);
  }
  for (const auto& [a, b] : defects.barriers()) {
    if (a.row == Row::Middle && b.row == Row::Middle) {
      const int lo = layout.axis_distance(a.axis, b.axis) == 1 &&
                             layout.wrap(a.axis + 1) == b.axis
                         ? a.axis
                         : b.axis;
      add_window(lo, lo + 1);
    }
  }

  auto evaluate = [&](const std::vector<std::size_t>& chosen) {
    std::set<Cell> repurposed;
    for (std::size_t i : chosen) {
      for (int node : windows[i]) {
        if (auto cell = solver.host(node)) repurposed.insert(*cell);
      }
    }
    auto lost = solver.unsatisfied(repurposed);
    lost.insert(repurposed.begin(), repurposed.end());
    return lost;
  };

  std::vector<std::size_t> best_choice;
  std::set<Cell> best_lost = evaluate(best_choice);
  if (windows.size() <= 12) {
    const std::size_t n = windows.size();
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
      std::vector<std::size_t> chosen;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (std::size_t{1} << i)) chosen.push_back(i);
      }
      auto lost = evaluate(chosen);
      if (lost.size() < best_lost.size() ||
          (lost.size() == best_lost.size() && chosen.size() < best_choice.size())) {
        best_lost = std::move(lost);
        best_choice = std::move(chosen);
      }
    }
  } else {
    for (std::size_t i = 0; i < windows.size(); ++i) {
      auto chosen = best_choice;
      chosen.push_back(i);
      auto lost = evaluate(chosen);
      if (lost.size() < best_lost.size()) {
        best_lost = std::move(lost);
        best_choice = std::move(chosen);
      }
    }
  }

  for (const auto& cell : best_lost) {
    result.repurposed_sites.insert(layout.site_of(cell));
    result.sacrificed_qubits.insert(cell);
  }
  result.sacrificed_qubits.insert(solver.dead_cells().begin(), solver.dead_cells().end());
  return result;
}

std::set<SiteCoord> live_qubit_sites(const TrilinearLayout& layout,
                                     const Reconfiguration& reconfig) {
  std::set<SiteCoord> out;
  for (const auto& cell : layout.cells()) {
    if (!reconfig.sacrificed_qubits.contains(cell)) out.insert(layout.site_of(cell));
  }
  return out;
}

}  // namespace trilinear
