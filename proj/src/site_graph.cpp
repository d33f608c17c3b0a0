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

#include "trilinear/site_graph.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

namespace trilinear {
namespace {

auto preference_key(SiteCoord s) {
  return std::make_tuple(s.row != Row::Middle, s.axis, static_cast<int>(s.row));
}

}  // namespace

SiteGraph::SiteGraph(const TrilinearLayout& layout, const DefectMap& defects)
    : length_(layout.length()), loop_(layout.loop()) {
  const int n = node_count();
  usable_.assign(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    usable_[static_cast<std::size_t>(v)] = defects.site_dead(site(v)) ? 0 : 1;
  }
  offsets_.reserve(static_cast<std::size_t>(n) + 1);
  offsets_.push_back(0);
  std::vector<SiteCoord> candidates;
  for (int v = 0; v < n; ++v) {
    candidates.clear();
    if (usable(v)) {
      const SiteCoord s = site(v);
      for (int delta : {-1, 1}) {
        const int a = s.axis + delta;
        if (a >= 0 && a < length_) {
          candidates.push_back({s.row, a, 0});
        } else if (loop_) {
          candidates.push_back({s.row, layout.wrap(a), 0});
        }
      }
      if (s.row == Row::Middle) {
        candidates.push_back({Row::Upper, s.axis, 0});
        candidates.push_back({Row::Lower, s.axis, 0});
      } else {
        candidates.push_back({Row::Middle, s.axis, 0});
      }
      std::sort(candidates.begin(), candidates.end(), [](SiteCoord a, SiteCoord b) {
        return preference_key(a) < preference_key(b);
      });
      candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
      for (const auto& t : candidates) {
        if (t == s) continue;
        const int u = index(t);
        if (!usable(u) || defects.barrier_dead(s, t)) continue;
        targets_.push_back(u);
      }
    }
    offsets_.push_back(static_cast<int>(targets_.size()));
  }
}

std::vector<int> bfs_distances(const SiteGraph& graph, std::span<const int> sources,
                               std::span<const char> blocked) {
  std::vector<int> dist(static_cast<std::size_t>(graph.node_count()), kUnreachable);
  std::deque<int> queue;
  for (int s : sources) {
    if (!graph.usable(s) || dist[static_cast<std::size_t>(s)] == 0) continue;
    dist[static_cast<std::size_t>(s)] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int u : graph.neighbors(v)) {
      auto& du = dist[static_cast<std::size_t>(u)];
      if (du != kUnreachable) continue;
      if (!blocked.empty() && blocked[static_cast<std::size_t>(u)]) continue;
      du = dist[static_cast<std::size_t>(v)] + 1;
      queue.push_back(u);
    }
  }
  return dist;
}

std::vector<int> shortest_path(const SiteGraph& graph, int source,
                               std::span<const int> targets,
                               std::span<const char> blocked) {
  if (!graph.usable(source)) return {};
  // Distances toward the target set; the source may itself be blocked (a
  // qubit leaving its own dot), so it is handled explicitly below.
  std::vector<int> live_targets;
  for (int t : targets) {
    if (t == source || blocked.empty() || !blocked[static_cast<std::size_t>(t)]) {
      live_targets.push_back(t);
    }
  }
  const auto dist = bfs_distances(graph, live_targets, blocked);
  int cur_dist = kUnreachable;
  for (int t : live_targets) {
    if (t == source) cur_dist = 0;
  }
  if (cur_dist != 0) {
    for (int u : graph.neighbors(source)) {
      const int d = dist[static_cast<std::size_t>(u)];
      if (d != kUnreachable && (cur_dist == kUnreachable || d + 1 < cur_dist)) {
        cur_dist = d + 1;
      }
    }
  }
  if (cur_dist == kUnreachable) return {};

  std::vector<int> path{source};
  int v = source;
  while (cur_dist > 0) {
    int next = -1;
    for (int u : graph.neighbors(v)) {
      if (dist[static_cast<std::size_t>(u)] == cur_dist - 1) {
        next = u;
        break;
      }
    }
    path.push_back(next);
    v = next;
    --cur_dist;
  }
  return path;
}

}  // namespace trilinear
