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

#include <span>
#include <utility>
#include <vector>

#include "trilinear/metrics.hpp"
#include "trilinear/router.hpp"
#include "trilinear/scheduler.hpp"
#include "trilinear/site_graph.hpp"

namespace trilinear {

/// Serial runs are the reference the parallel paths are tested against.
enum class Exec { Serial, Parallel };

/// Row-major node_count x node_count hop distances, kUnreachable where no path.
std::vector<int> all_pairs_distances(const SiteGraph& graph, Exec exec = Exec::Parallel);

std::vector<ScalingPoint> sweep_curve(std::span<const long long> ns,
                                      std::span<const SweepSpec> variants, Length pitch,
                                      const ScalingOptions& options, Exec exec);

std::vector<Schedule> compile_batch(std::span<const Circuit> circuits,
                                    const TrilinearLayout& layout, const DefectMap& defects,
                                    const MuxConfig& mux, const CompileOptions& options = {},
                                    Exec exec = Exec::Parallel);

/// two_qubit_plan for every pair. The first error, in input order, is rethrown.
std::vector<ShuttlePlan> plan_pairs(const TrilinearLayout& layout, const DefectMap& defects,
                                    std::span<const std::pair<Cell, Cell>> pairs,
                                    Exec exec = Exec::Parallel);

}  // namespace trilinear
