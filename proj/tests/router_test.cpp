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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "trilinear/error.hpp"
#include "trilinear/router.hpp"

namespace trilinear {
namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::ParseError;
}

DefectMap column_cut(int axis) {
  DefectMap d;
  for (Row r : {Row::Upper, Row::Middle, Row::Lower}) d.add_site({r, axis, 0});
  return d;
}

/// Checks that the plan is a chained walk that starts and ends at home.
void expect_chained(const TrilinearLayout& layout, const ShuttlePlan& plan) {
  const auto& grid = layout.grid();
  const SiteCoord home = layout.site_of(grid.cell_of(plan.qubit));
  SiteCoord at = home;
  for (const auto& op : plan.ops) {
    ASSERT_EQ(op.from, at) << to_string(op.kind);
    if (op.is_move()) {
      ASSERT_TRUE(lattice_adjacent(layout, op.from, op.to));
      if (op.kind == OpKind::HorizontalStep) ASSERT_EQ(op.from.row, op.to.row);
      if (op.kind == OpKind::VerticalTransfer) ASSERT_EQ(op.from.axis, op.to.axis);
      at = op.to;
    } else {
      ASSERT_EQ(op.kind, OpKind::TwoQubitGate);
      ASSERT_TRUE(lattice_adjacent(layout, op.from, op.to));
      ASSERT_EQ(op.to, layout.site_of(grid.cell_of(op.partner)));
    }
  }
  EXPECT_EQ(at, home);
}

TEST(ShuttlePath, StraightLineOnClearMiddleRow) {
  const auto layout = map_to_trilinear({1, 8});
  const auto path = shortest_shuttle_path(layout, {Row::Middle, 1, 0}, {Row::Middle, 6, 0}, {});
  ASSERT_EQ(path.size(), 6u);
  for (std::size_t i = 0; i < path.size(); ++i) {
    EXPECT_EQ(path[i], (SiteCoord{Row::Middle, 1 + static_cast<int>(i), 0}));
  }
}

TEST(ShuttlePath, DetoursAroundDeadMiddleDot) {
  const auto layout = map_to_trilinear({1, 8});
  DefectMap d;
  d.add_site({Row::Middle, 3, 0});
  const auto path = shortest_shuttle_path(layout, {Row::Middle, 1, 0}, {Row::Middle, 6, 0}, d);
  EXPECT_EQ(path.size() - 1, 7u);
  for (const auto& s : path) EXPECT_NE(s, (SiteCoord{Row::Middle, 3, 0}));
}

TEST(ShuttlePath, FullColumnCutPartitions) {
  const auto layout = map_to_trilinear({1, 8});
  EXPECT_EQ(code_of([&] {
              shortest_shuttle_path(layout, {Row::Middle, 1, 0}, {Row::Middle, 6, 0},
                                    column_cut(3));
            }),
            ErrorCode::Partitioned);
  const auto loop = map_to_trilinear({1, 8}, Length::nm(100), true);
  const auto path =
      shortest_shuttle_path(loop, {Row::Middle, 1, 0}, {Row::Middle, 6, 0}, column_cut(3));
  EXPECT_EQ(path.size() - 1, 3u);
}

TEST(ShuttlePath, RejectsUnusableEndpoints) {
  const auto layout = map_to_trilinear({1, 8});
  DefectMap d;
  d.add_site({Row::Middle, 1, 0});
  EXPECT_EQ(code_of([&] {
              shortest_shuttle_path(layout, {Row::Middle, 1, 0}, {Row::Middle, 6, 0}, d);
            }),
            ErrorCode::InvalidSite);
  EXPECT_EQ(code_of([&] {
              shortest_shuttle_path(layout, {Row::Middle, 1, 0}, {Row::Middle, 6, 0}, {},
                                    {{Row::Middle, 6, 0}});
            }),
            ErrorCode::InvalidSite);
}

TEST(ShuttlePath, LengthMatchesBfsOracleOnRandomLayouts) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const int cols = std::uniform_int_distribution<int>(2, 64)(rng);
    const bool loop = trial % 3 == 0;
    const auto layout = map_to_trilinear({1, cols}, Length::nm(100), loop);
    const int len = layout.length();
    std::uniform_int_distribution<int> row(0, 2), axis(0, len - 1);
    DefectMap d;
    const int n_def = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int i = 0; i < n_def; ++i) d.add_site({static_cast<Row>(row(rng)), axis(rng), 0});
    const SiteCoord from{static_cast<Row>(row(rng)), axis(rng), 0};
    const SiteCoord to{static_cast<Row>(row(rng)), axis(rng), 0};
    if (d.site_dead(from) || d.site_dead(to)) continue;
    const oracle::Lattice lat(len, loop, d);
    const int want = lat.bfs(from)[static_cast<std::size_t>(lat.id(to))];
    if (want < 0) {
      EXPECT_EQ(code_of([&] { shortest_shuttle_path(layout, from, to, d); }),
                ErrorCode::Partitioned);
      continue;
    }
    const auto path = shortest_shuttle_path(layout, from, to, d);
    ASSERT_EQ(static_cast<int>(path.size()) - 1, want) << "trial " << trial;
    for (std::size_t i = 1; i < path.size(); ++i) {
      ASSERT_TRUE(lat.neighbors(path[i - 1]).contains(lat.id(path[i])));
    }
  }
}

TEST(VerticalGate, FourByFourTakesRowWidthSteps) {
  const auto layout = map_to_trilinear({4, 4});
  const auto plan = vertical_gate_plan(layout, {0, 2}, {1, 2}, {});
  EXPECT_EQ(plan.horizontal_steps, 4);
  EXPECT_EQ(plan.vertical_transfers, 2);
  EXPECT_EQ(plan.qubit, 2);
  EXPECT_EQ(plan.partner, 6);
  expect_chained(layout, plan);
  ASSERT_EQ(plan.ops.size(), 7u);
  EXPECT_EQ(plan.ops[0], (MicroOp{OpKind::VerticalTransfer, {Row::Upper, 2, 0}, {Row::Middle, 2, 0}, 1}));
  EXPECT_EQ(plan.ops[3].kind, OpKind::TwoQubitGate);
  EXPECT_EQ(plan.ops[3].from, (SiteCoord{Row::Middle, 4, 0}));
  EXPECT_EQ(plan.ops[3].to, (SiteCoord{Row::Lower, 4, 0}));
  EXPECT_EQ(plan.total_ticks(), 1 + 2 + 2 + 2 + 1);
}

TEST(VerticalGate, ReturnRetracesOutbound) {
  const auto layout = map_to_trilinear({6, 6});
  for (int r = 0; r + 1 < 6; ++r) {
    for (int c = 0; c < 6; ++c) {
      const auto plan = vertical_gate_plan(layout, {r, c}, {r + 1, c}, {});
      std::size_t g = 0;
      while (plan.ops[g].kind != OpKind::TwoQubitGate) ++g;
      ASSERT_EQ(plan.ops.size(), 2 * g + 1);
      for (std::size_t i = 0; i < g; ++i) {
        const auto& out = plan.ops[i];
        const auto& back = plan.ops[plan.ops.size() - 1 - i];
        EXPECT_EQ(out.from, back.to);
        EXPECT_EQ(out.to, back.from);
        EXPECT_EQ(out.kind, back.kind);
      }
    }
  }
}

TEST(VerticalGate, DeadMiddleDotForcesAnOuterDetour) {
  // The outer-row detour U2-U3-U4-M4 is as short as the blocked Middle route,
  // so the count stays at 4 while the dead dot is avoided.
  const auto layout = map_to_trilinear({4, 4});
  DefectMap d;
  d.add_site({Row::Middle, 3, 0});
  const auto plan = vertical_gate_plan(layout, {0, 2}, {1, 2}, d);
  EXPECT_EQ(plan.horizontal_steps, 4);
  expect_chained(layout, plan);
  for (const auto& op : plan.ops) {
    EXPECT_NE(op.from, (SiteCoord{Row::Middle, 3, 0}));
    EXPECT_NE(op.to, (SiteCoord{Row::Middle, 3, 0}));
  }
  const oracle::Lattice lat(layout.length(), false, d);
  const int oracle_one_way = lat.bfs({Row::Upper, 2, 0})[static_cast<std::size_t>(
      lat.id({Row::Middle, 4, 0}))];
  EXPECT_EQ(plan.horizontal_steps + plan.vertical_transfers, 2 * oracle_one_way);
}

TEST(VerticalGate, RowNeighborsInteractInPlace) {
  const auto layout = map_to_trilinear({4, 4});
  const auto plan = vertical_gate_plan(layout, {0, 1}, {0, 2}, {});
  EXPECT_EQ(plan.horizontal_steps, 0);
  ASSERT_EQ(plan.ops.size(), 1u);
  EXPECT_EQ(plan.ops[0].kind, OpKind::TwoQubitGate);
}

TEST(VerticalGate, ErrorCodes) {
  const auto layout = map_to_trilinear({4, 4});
  EXPECT_EQ(code_of([&] { vertical_gate_plan(layout, {0, 0}, {2, 0}, {}); }),
            ErrorCode::NotNeighbors);
  DefectMap d;
  d.add_site(layout.site_of({1, 0}));
  EXPECT_EQ(code_of([&] { vertical_gate_plan(layout, {0, 0}, {1, 0}, d); }),
            ErrorCode::DeadQubit);
  EXPECT_EQ(code_of([&] { vertical_gate_plan(layout, {0, 0}, {9, 0}, {}); }),
            ErrorCode::InvalidSite);
}

TEST(VerticalGate, ExactlyRowWidthOnEvenColumns) {
  for (int c : {2, 4, 6, 8, 10}) {
    const auto layout = map_to_trilinear({5, c});
    for (int r = 0; r + 1 < 5; ++r) {
      for (int col = 0; col < c; ++col) {
        const auto plan = vertical_gate_plan(layout, {r, col}, {r + 1, col}, {});
        ASSERT_EQ(plan.horizontal_steps, c) << r << "," << col << " C=" << c;
      }
    }
  }
}

TEST(VerticalGate, OddColumnsAlternateFloorAndCeilHalves) {
  const auto layout = map_to_trilinear({4, 5});
  // Even-to-odd rows are floor(C/2) apart, odd-to-even rows ceil(C/2).
  EXPECT_EQ(vertical_gate_plan(layout, {0, 1}, {1, 1}, {}).horizontal_steps, 4);
  EXPECT_EQ(vertical_gate_plan(layout, {1, 1}, {2, 1}, {}).horizontal_steps, 6);
}

TEST(VerticalGate, DeepSubRowQubitsUseAbstractTransfer) {
  const auto layout = map_to_trilinear({2, 8}, Length::nm(100), false, 2);
  const auto plan = vertical_gate_plan(layout, {0, 6}, {1, 6}, {});
  ASSERT_FALSE(plan.ops.empty());
  EXPECT_EQ(plan.ops.front().kind, OpKind::VerticalTransfer);
  EXPECT_EQ(plan.ops.front().from.depth, 1);
  EXPECT_EQ(plan.ops.front().duration_ticks, 2);
  EXPECT_EQ(plan.ops.back().to.depth, 1);
}

TEST(LongRange, SameRowWithinTwiceRowWidth) {
  const auto layout = map_to_trilinear({8, 8});
  const auto plan = long_range_plan(layout, {2, 0}, {2, 7});
  EXPECT_LE(plan.horizontal_steps, 16);
  expect_chained(layout, plan);
}

TEST(LongRange, NeighborRowsWithinThreeTimesRowWidth) {
  const auto layout = map_to_trilinear({8, 8});
  const auto plan = long_range_plan(layout, {2, 1}, {3, 6});
  EXPECT_LE(plan.horizontal_steps, 24);
  expect_chained(layout, plan);
}

TEST(LongRange, LoopWrapsAroundHeadToTail) {
  const auto open = map_to_trilinear({8, 8});
  const auto loop = map_to_trilinear({8, 8}, Length::nm(100), true);
  EXPECT_EQ(code_of([&] { long_range_plan(open, {0, 3}, {7, 3}); }), ErrorCode::UnsupportedPair);
  const auto plan = long_range_plan(loop, {0, 3}, {7, 3});
  const auto straight = shortest_shuttle_path(open, {Row::Middle, 3, 0}, {Row::Middle, 31, 0}, {});
  const int open_cost = 2 * static_cast<int>(straight.size() - 1);
  EXPECT_LT(plan.horizontal_steps, open_cost);
  EXPECT_EQ(plan.horizontal_steps, 16);
  expect_chained(loop, plan);
}

TEST(LongRange, RejectsDistantRows) {
  const auto layout = map_to_trilinear({8, 8});
  EXPECT_EQ(code_of([&] { long_range_plan(layout, {0, 0}, {2, 0}); }), ErrorCode::UnsupportedPair);
  EXPECT_EQ(code_of([&] { long_range_plan(layout, {0, 0}, {0, 0}); }), ErrorCode::UnsupportedPair);
  EXPECT_FALSE(supported_pair(layout, {0, 0}, {7, 0}));
}

TEST(LongRange, FallsBackToSecondQubitWhenFirstCannotArrive) {
  const auto layout = map_to_trilinear({1, 8});
  // M5 is reachable only through U5 itself, so (0,1) cannot come alongside;
  // (0,5) can leave through the free U6 and travel to M1 instead.
  DefectMap d;
  d.add_site({Row::Middle, 4, 0});
  d.add_barrier({Row::Middle, 5, 0}, {Row::Middle, 6, 0});
  d.add_barrier({Row::Middle, 5, 0}, {Row::Lower, 5, 0});
  std::set<SiteCoord> blocked;
  for (const auto& c : layout.cells()) {
    if (c.col != 6) blocked.insert(layout.site_of(c));
  }
  const auto plan = long_range_plan(layout, {0, 1}, {0, 5}, d, blocked);
  EXPECT_EQ(plan.qubit, 5);
  EXPECT_EQ(plan.partner, 1);
  expect_chained(layout, plan);
}

TEST(Reconfigure, NoDefectsIsIdentity) {
  EXPECT_TRUE(reconfigure_for_defects(map_to_trilinear({4, 4}), {}).empty());
}

/// Every surviving supported pair must be plannable around the others, and
/// the oracle must agree that some route exists.
void expect_connected(const TrilinearLayout& layout, const DefectMap& d, const Reconfiguration& rc) {
  const auto live = live_qubit_sites(layout, rc);
  const oracle::Lattice lat(layout.length(), layout.loop(), d);
  std::vector<Cell> cells;
  for (const auto& c : layout.cells()) {
    if (!rc.sacrificed_qubits.contains(c)) cells.push_back(c);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      if (!supported_pair(layout, cells[i], cells[j])) continue;
      const auto a = layout.site_of(cells[i]);
      const auto b = layout.site_of(cells[j]);
      ASSERT_TRUE(oracle::can_meet(lat, a, b, live) || oracle::can_meet(lat, b, a, live))
          << to_string(cells[i]) << " " << to_string(cells[j]);
      ASSERT_NO_THROW(two_qubit_plan(layout, cells[i], cells[j], d, live));
    }
  }
}

TEST(Reconfigure, SingleMiddleDefectCostsAtMostTwo) {
  const auto layout = map_to_trilinear({1, 16});
  for (int x = 0; x < layout.length(); ++x) {
    DefectMap d;
    d.add_site({Row::Middle, x, 0});
    const auto rc = reconfigure_for_defects(layout, d);
    EXPECT_LE(rc.sacrificed_qubits.size(), 2u) << "x=" << x;
    for (const auto& cell : rc.sacrificed_qubits) {
      const auto s = layout.site_of(cell);
      EXPECT_LE(std::abs(s.axis - x), 1);
    }
    for (const auto& s : rc.repurposed_sites) {
      EXPECT_NE(s.row, Row::Middle);
      EXPECT_TRUE(rc.sacrificed_qubits.contains(*layout.cell_at(s)));
    }
    expect_connected(layout, d, rc);
  }
}

TEST(Reconfigure, FullyMappedRowsMayNeedMore) {
  const auto layout = map_to_trilinear({4, 4});
  for (int x = 0; x < layout.length(); ++x) {
    DefectMap d;
    d.add_site({Row::Middle, x, 0});
    const auto rc = reconfigure_for_defects(layout, d);
    EXPECT_LT(rc.sacrificed_qubits.size(), 16u);
    expect_connected(layout, d, rc);
  }
}

TEST(Reconfigure, LoopSurvivesColumnCut) {
  const auto layout = map_to_trilinear({4, 4}, Length::nm(100), true);
  const auto rc = reconfigure_for_defects(layout, column_cut(5));
  EXPECT_EQ(rc.sacrificed_qubits, (std::set<Cell>{{1, 3}, {2, 1}}));
  expect_connected(layout, column_cut(5), rc);
}

TEST(Reconfigure, OpenLayoutColumnCutIsUnrecoverable) {
  const auto layout = map_to_trilinear({4, 4});
  EXPECT_EQ(code_of([&] { reconfigure_for_defects(layout, column_cut(5)); }),
            ErrorCode::Unrecoverable);
}

TEST(Reconfigure, DeadQubitDotIsSacrificed) {
  const auto layout = map_to_trilinear({4, 4});
  DefectMap d;
  d.add_site(layout.site_of({2, 2}));
  const auto rc = reconfigure_for_defects(layout, d);
  EXPECT_TRUE(rc.sacrificed_qubits.contains(Cell{2, 2}));
  expect_connected(layout, d, rc);
}

TEST(Reconfigure, DeadMiddleBarrierIsBypassed) {
  const auto layout = map_to_trilinear({1, 16});
  DefectMap d;
  d.add_barrier({Row::Middle, 7, 0}, {Row::Middle, 8, 0});
  const auto rc = reconfigure_for_defects(layout, d);
  EXPECT_LE(rc.sacrificed_qubits.size(), 2u);
  expect_connected(layout, d, rc);
}

}  // namespace
}  // namespace trilinear
