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
#include <vector>

#include "trilinear/topology.hpp"

namespace trilinear {

/// The 3 x length routing lattice: the Middle row plus the depth-0 sub-row of
/// each outer row. Dead sites are unusable and dead barriers drop their edge.
/// Neighbor lists are sorted Middle-first, then by axis, so any walk that takes
/// the first qualifying neighbor is deterministic.
class SiteGraph {
 public:
  SiteGraph(const TrilinearLayout& layout, const DefectMap& defects);

  int node_count() const { return 3 * length_; }
  int length() const { return length_; }
  bool loop() const { return loop_; }

  /// Index of a depth-0 site; the caller guarantees the site is in bounds.
  int index(SiteCoord site) const {
    return static_cast<int>(site.row) * length_ + site.axis;
  }
  SiteCoord site(int node) const {
    return {static_cast<Row>(node / length_), node % length_, 0};
  }
  bool usable(int node) const { return usable_[static_cast<std::size_t>(node)] != 0; }

  std::span<const int> neighbors(int node) const {
    const auto b = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(node)]);
    const auto e = static_cast<std::size_t>(offsets_[static_cast<std::size_t>(node) + 1]);
    return std::span<const int>(targets_).subspan(b, e - b);
  }

 private:
  int length_ = 0;
  bool loop_ = false;
  std::vector<char> usable_;
  std::vector<int> offsets_;
  std::vector<int> targets_;
};

inline constexpr int kUnreachable = -1;

/// Hop distances from `sources`. Nodes flagged in `blocked` are never entered,
/// though a blocked source still seeds the search.
std::vector<int> bfs_distances(const SiteGraph& graph, std::span<const int> sources,
                               std::span<const char> blocked = {});

/// Minimum-hop path from `source` to the nearest of `targets`, inclusive of
/// both ends. Ties prefer Middle-row hops, then the lower axis. Empty when no
/// target is reachable.
std::vector<int> shortest_path(const SiteGraph& graph, int source,
                               std::span<const int> targets,
                               std::span<const char> blocked = {});

}  // namespace trilinear
