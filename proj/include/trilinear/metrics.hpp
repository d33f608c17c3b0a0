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
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "trilinear/router.hpp"
#include "trilinear/scheduler.hpp"
#include "trilinear/topology.hpp"

namespace trilinear {

enum class Variant { Trilinear, MRow, Semi2D };

std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view name);

struct ScalingPoint {
  long long n = 0;
  Variant variant = Variant::Trilinear;
  int m = 1;
  /// The N actually evaluated; differs from `n` when Semi2D rounds up.
  long long effective_n = 0;
  bool rounded = false;
  long long steps_one_way = 0;
  long long steps_round_trip = 0;
  int vertical_one_way = 1;
  int vertical_round_trip = 2;
  Length length_one_way;
  Length length_round_trip;

  bool operator==(const ScalingPoint&) const = default;
};

struct ScalingOptions {
  /// Extra one-way steps charged to a Semi2D transfer between sub-arrays.
  long long semi2d_penalty = 0;
};

/// Exact floor square root and fourth-root ceiling for 64-bit counts.
long long isqrt(long long n);
long long iroot4_ceil(long long n);

/// Throws InvalidN for N < 4, for non-square N on Trilinear and MRow, and for
/// M < 1.
ScalingPoint shuttle_scaling(long long n, Variant variant, int m = 1,
                             Length pitch = Length::nm(100.0),
                             const ScalingOptions& options = {});

struct SweepSpec {
  Variant variant = Variant::Trilinear;
  int m = 1;
};

/// Rows in input order: every N for the first variant, then the next.
std::vector<ScalingPoint> sweep_curve(std::span<const long long> ns,
                                      std::span<const SweepSpec> variants,
                                      Length pitch = Length::nm(100.0),
                                      const ScalingOptions& options = {});

/// Least-squares slope of log(y) against log(x).
double loglog_slope(std::span<const std::pair<double, double>> points);

struct FidelityModel {
  double f_step = 1.0;
  double f_transfer = 1.0;
  double f_1q = 1.0;
  double f_2q = 1.0;
  double f_readout = 1.0;

  /// Throws InvalidConfig for factors outside [0, 1].
  void validate() const;
  double factor(OpKind kind) const;
  bool operator==(const FidelityModel&) const = default;
};

struct FidelityBudget {
  double aggregate = 1.0;
  std::map<int, double> per_qubit;
};

FidelityBudget fidelity_budget(const Schedule& schedule, const FidelityModel& model);
double fidelity_budget(std::span<const MicroOp> ops, const FidelityModel& model);

struct FootprintEstimate {
  Length array_length;
  Length array_width;
  Length core_length;
  Length core_width;
  Length tsv_pitch;
  int fanout_rows = 0;
};

/// Length is the middle lane plus one TSV pitch of sensor margin per end;
/// width is the three-row core plus `fanout_rows` TSV rows on each side.
FootprintEstimate footprint_estimate(const TrilinearLayout& layout, Length tsv_pitch,
                                     int fanout_rows);

/// Gates to fan out: one plunger per dot, one barrier per lattice edge, and
/// three per sensor (sensors every `set_spacing` axes on each side).
long long gate_count(const TrilinearLayout& layout, int set_spacing);

/// Fanout rows per side needed to land every gate on a TSV, with TSVs spaced
/// `tsv_pitch` along the array length.
int required_fanout_rows(const TrilinearLayout& layout, Length tsv_pitch, int set_spacing);

}  // namespace trilinear
