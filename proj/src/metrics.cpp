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

#include "trilinear/metrics.hpp"

#include <cmath>
#include <numeric>

#include "trilinear/error.hpp"

namespace trilinear {

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::Trilinear: return "trilinear";
    case Variant::MRow: return "mrow";
    case Variant::Semi2D: return "semi2d";
  }
  return "unknown";
}

Variant variant_from_string(std::string_view name) {
  if (name == "trilinear") return Variant::Trilinear;
  if (name == "mrow") return Variant::MRow;
  if (name == "semi2d") return Variant::Semi2D;
  throw Error(ErrorCode::ParseError, "unknown variant '" + std::string(name) + "'");
}

long long isqrt(long long n) {
  if (n < 0) throw Error(ErrorCode::InvalidN, "negative N");
  auto r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r > n / r) --r;
  while (r + 1 <= n / (r + 1)) ++r;
  return r;
}

long long iroot4_ceil(long long n) {
  long long r = isqrt(isqrt(n));
  while (r * r * r * r < n) ++r;
  return r;
}

ScalingPoint shuttle_scaling(long long n, Variant variant, int m, Length pitch,
                             const ScalingOptions& options) {
  if (n < 4) throw Error(ErrorCode::InvalidN, "N must be at least 4, got " + std::to_string(n));
  if (m < 1) throw Error(ErrorCode::InvalidN, "M must be at least 1");
  ScalingPoint p;
  p.n = n;
  p.effective_n = n;
  p.variant = variant;
  p.m = variant == Variant::MRow ? m : 1;
  switch (variant) {
    case Variant::Trilinear:
    case Variant::MRow: {
      const long long side = isqrt(n);
      if (side * side != n) {
        throw Error(ErrorCode::InvalidN, "N = " + std::to_string(n) + " is not a perfect square");
      }
      const long long denom = 2LL * p.m;
      p.steps_one_way = (side + denom - 1) / denom;
      break;
    }
    case Variant::Semi2D: {
      const long long q = iroot4_ceil(n);
      p.effective_n = q * q * q * q;
      p.rounded = p.effective_n != n;
      p.steps_one_way = (q + 1) / 2 + options.semi2d_penalty;
      break;
    }
  }
  p.steps_round_trip = 2 * p.steps_one_way;
  p.length_one_way = pitch * static_cast<double>(p.steps_one_way);
  p.length_round_trip = pitch * static_cast<double>(p.steps_round_trip);
  return p;
}

std::vector<ScalingPoint> sweep_curve(std::span<const long long> ns,
                                      std::span<const SweepSpec> variants, Length pitch,
                                      const ScalingOptions& options) {
  std::vector<ScalingPoint> out;
  out.reserve(ns.size() * variants.size());
  for (const auto& v : variants) {
    for (long long n : ns) out.push_back(shuttle_scaling(n, v.variant, v.m, pitch, options));
  }
  return out;
}

double loglog_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw Error(ErrorCode::InvalidN, "slope needs at least two points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : points) {
    const double lx = std::log(x), ly = std::log(y);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double n = static_cast<double>(points.size());
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

void FidelityModel::validate() const {
  for (double f : {f_step, f_transfer, f_1q, f_2q, f_readout}) {
    if (!(f >= 0.0 && f <= 1.0)) {
      throw Error(ErrorCode::InvalidConfig, "fidelity factors must lie in [0, 1]");
    }
  }
}

double FidelityModel::factor(OpKind kind) const {
  switch (kind) {
    case OpKind::HorizontalStep: return f_step;
    case OpKind::VerticalTransfer: return f_transfer;
    case OpKind::SingleQubitPulse: return f_1q;
    case OpKind::TwoQubitGate: return f_2q;
    case OpKind::Readout: return f_readout;
    case OpKind::Idle: return 1.0;
  }
  return 1.0;
}

FidelityBudget fidelity_budget(const Schedule& schedule, const FidelityModel& model) {
  model.validate();
  FidelityBudget b;
  for (const auto& [q, site] : schedule.homes) b.per_qubit[q] = 1.0;
  for (const auto& tick : schedule.ticks) {
    for (const auto& e : tick.entries) {
      if (e.offset != 0) continue;
      const double f = model.factor(e.op.kind);
      b.aggregate *= f;
      b.per_qubit[e.qubit] *= f;
      if (e.op.kind == OpKind::TwoQubitGate && e.op.partner >= 0) b.per_qubit[e.op.partner] *= f;
    }
  }
  return b;
}

double fidelity_budget(std::span<const MicroOp> ops, const FidelityModel& model) {
  model.validate();
  return std::accumulate(ops.begin(), ops.end(), 1.0,
                         [&](double acc, const MicroOp& op) { return acc * model.factor(op.kind); });
}

FootprintEstimate footprint_estimate(const TrilinearLayout& layout, Length tsv_pitch,
                                     int fanout_rows) {
  if (!(tsv_pitch.nm() > 0.0)) throw Error(ErrorCode::InvalidConfig, "tsv pitch must be positive");
  if (fanout_rows < 0) throw Error(ErrorCode::InvalidConfig, "fanout rows must be non-negative");
  FootprintEstimate f;
  f.tsv_pitch = tsv_pitch;
  f.fanout_rows = fanout_rows;
  f.core_length = layout.pitch() * static_cast<double>(layout.length());
  f.core_width = layout.pitch() * static_cast<double>(2 * layout.m_rows() + 1);
  f.array_length = f.core_length + tsv_pitch * 2.0;
  f.array_width = f.core_width + tsv_pitch * static_cast<double>(2 * fanout_rows);
  return f;
}

long long gate_count(const TrilinearLayout& layout, int set_spacing) {
  if (set_spacing < 1) throw Error(ErrorCode::InvalidConfig, "sensor spacing must be at least 1");
  const long long len = layout.length();
  const long long depth = layout.m_rows();
  // Dots: middle lane plus `depth` sub-rows per side.
  const long long dots = len * (1 + 2 * depth);
  // Barriers: along every row, plus one between each vertically stacked pair.
  long long edges = (1 + 2 * depth) * (len - 1) + 2 * depth * len;
  if (layout.loop()) edges += 1 + 2 * depth;
  const long long sensors_per_side = (len + set_spacing - 1) / set_spacing;
  return dots + edges + 3 * 2 * sensors_per_side;
}

int required_fanout_rows(const TrilinearLayout& layout, Length tsv_pitch, int set_spacing) {
  if (!(tsv_pitch.nm() > 0.0)) throw Error(ErrorCode::InvalidConfig, "tsv pitch must be positive");
  const double length = footprint_estimate(layout, tsv_pitch, 0).array_length.nm();
  const auto per_row = std::max<long long>(1, static_cast<long long>(length / tsv_pitch.nm() + 1e-9));
  const long long per_side = (gate_count(layout, set_spacing) + 1) / 2;
  return static_cast<int>((per_side + per_row - 1) / per_row);
}

}  // namespace trilinear
