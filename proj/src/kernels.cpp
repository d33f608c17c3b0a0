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

#include "trilinear/kernels.hpp"

#include <exception>

namespace trilinear {

namespace {

/// Runs body(i) for i in [0, n), rethrowing the lowest-index failure. Cheap
/// bodies want a large chunk.
template <typename Body>
void for_each_index(std::size_t n, Exec exec, Body&& body, int chunk = 1) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, chunk) if (exec == Exec::Parallel)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<int> all_pairs_distances(const SiteGraph& graph, Exec exec) {
  const auto n = static_cast<std::size_t>(graph.node_count());
  std::vector<int> out(n * n, kUnreachable);
  for_each_index(n, exec, [&](std::size_t s) {
    const int src = static_cast<int>(s);
    const auto row = bfs_distances(graph, std::span<const int>(&src, 1));
    std::copy(row.begin(), row.end(), out.begin() + static_cast<std::ptrdiff_t>(s * n));
  });
  return out;
}

std::vector<ScalingPoint> sweep_curve(std::span<const long long> ns,
                                      std::span<const SweepSpec> variants, Length pitch,
                                      const ScalingOptions& options, Exec exec) {
  if (exec == Exec::Serial) return sweep_curve(ns, variants, pitch, options);
  std::vector<ScalingPoint> out(ns.size() * variants.size());
  for_each_index(out.size(), exec, [&](std::size_t i) {
    const auto& v = variants[i / ns.size()];
    out[i] = shuttle_scaling(ns[i % ns.size()], v.variant, v.m, pitch, options);
  }, 4096);
  return out;
}

std::vector<Schedule> compile_batch(std::span<const Circuit> circuits,
                                    const TrilinearLayout& layout, const DefectMap& defects,
                                    const MuxConfig& mux, const CompileOptions& options,
                                    Exec exec) {
  std::vector<Schedule> out(circuits.size());
  for_each_index(circuits.size(), exec, [&](std::size_t i) {
    out[i] = compile(circuits[i], layout, defects, mux, options);
  });
  return out;
}

std::vector<ShuttlePlan> plan_pairs(const TrilinearLayout& layout, const DefectMap& defects,
                                    std::span<const std::pair<Cell, Cell>> pairs, Exec exec) {
  std::vector<ShuttlePlan> out(pairs.size());
  for_each_index(pairs.size(), exec, [&](std::size_t i) {
    out[i] = two_qubit_plan(layout, pairs[i].first, pairs[i].second, defects);
  });
  return out;
}

}  // namespace trilinear
