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

#include "trilinear/topology.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "trilinear/error.hpp"

namespace trilinear {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::InvalidSite: return "InvalidSite";
    case ErrorCode::InvalidN: return "InvalidN";
    case ErrorCode::NotNeighbors: return "NotNeighbors";
    case ErrorCode::Partitioned: return "Partitioned";
    case ErrorCode::Unrecoverable: return "Unrecoverable";
    case ErrorCode::UnsupportedPair: return "UnsupportedPair";
    case ErrorCode::DeadQubit: return "DeadQubit";
    case ErrorCode::MuxInfeasible: return "MuxInfeasible";
    case ErrorCode::NoAdjacentEmpty: return "NoAdjacentEmpty";
    case ErrorCode::InvalidCircuit: return "InvalidCircuit";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

char row_letter(Row row) {
  switch (row) {
    case Row::Upper: return 'U';
    case Row::Middle: return 'M';
    case Row::Lower: return 'L';
  }
  return '?';
}

Row row_from_letter(char letter) {
  switch (letter) {
    case 'U': return Row::Upper;
    case 'M': return Row::Middle;
    case 'L': return Row::Lower;
    default:
      throw Error(ErrorCode::InvalidSite,
                  std::string("unknown row letter '") + letter + "'");
  }
}

std::string to_string(SiteCoord site) {
  std::ostringstream os;
  os << '(' << row_letter(site.row) << ',' << site.axis;
  if (site.depth != 0) os << ",d" << site.depth;
  os << ')';
  return os.str();
}

std::string to_string(Cell cell) {
  std::ostringstream os;
  os << '(' << cell.row << ',' << cell.col << ')';
  return os.str();
}

TrilinearLayout::TrilinearLayout(GridSpec grid, Length pitch, bool loop, int m_rows)
    : grid_(grid), pitch_(pitch), loop_(loop), m_rows_(m_rows) {
  if (grid.rows < 1) throw Error(ErrorCode::InvalidGrid, "grid needs at least one row");
  if (grid.cols < 2) {
    throw Error(ErrorCode::InvalidGrid, "grid needs at least two columns");
  }
  if (m_rows < 1 || m_rows > grid.cols) {
    throw Error(ErrorCode::InvalidGrid, "m_rows must lie in [1, cols]");
  }
  if (!(pitch.nm() > 0.0)) throw Error(ErrorCode::InvalidGrid, "pitch must be positive");
  block_width_ = (grid.cols + m_rows - 1) / m_rows;
  upper_len_ = ((grid.rows + 1) / 2) * block_width_;
  lower_len_ = (grid.rows / 2) * block_width_;
  length_ = std::max(upper_len_, lower_len_ > 0 ? lower_len_ + shift() : 0);
}

bool TrilinearLayout::in_bounds(SiteCoord site) const {
  if (site.axis < 0 || site.axis >= length_) return false;
  if (site.row == Row::Middle) return site.depth == 0;
  return site.depth >= 0 && site.depth < m_rows_;
}

SiteCoord TrilinearLayout::site_of(Cell cell) const {
  if (!grid_.contains(cell)) {
    throw Error(ErrorCode::InvalidSite, "cell " + to_string(cell) + " outside grid");
  }
  const int w = block_width_;
  const int depth = cell.col / w;
  int offset = cell.col % w;
  // Sub-rows are filled boustrophedon so consecutive columns stay adjacent.
  if (depth % 2 == 1) offset = w - 1 - offset;
  if (cell.row % 2 == 0) {
    return {Row::Upper, (cell.row / 2) * w + offset, depth};
  }
  return {Row::Lower, ((cell.row - 1) / 2) * w + offset + shift(), depth};
}

std::optional<Cell> TrilinearLayout::cell_at(SiteCoord site) const {
  if (!in_bounds(site)) {
    throw Error(ErrorCode::InvalidSite, "site " + to_string(site) + " out of bounds");
  }
  if (site.row == Row::Middle) return std::nullopt;
  int local = site.axis;
  int extent = upper_len_;
  int parity = 0;
  if (site.row == Row::Lower) {
    local -= shift();
    extent = lower_len_;
    parity = 1;
  }
  if (local < 0 || local >= extent) return std::nullopt;
  const int w = block_width_;
  const int block = local / w;
  int offset = local % w;
  if (site.depth % 2 == 1) offset = w - 1 - offset;
  const int col = site.depth * w + offset;
  if (col >= grid_.cols) return std::nullopt;
  return Cell{2 * block + parity, col};
}

int TrilinearLayout::wrap(int axis) const {
  if (!loop_) return axis;
  const int m = axis % length_;
  return m < 0 ? m + length_ : m;
}

int TrilinearLayout::axis_distance(int a, int b) const {
  const int d = std::abs(a - b);
  return loop_ ? std::min(d, length_ - d) : d;
}

std::vector<Cell> TrilinearLayout::cells() const {
  std::vector<Cell> out;
  out.reserve(static_cast<std::size_t>(grid_.qubit_count()));
  for (int r = 0; r < grid_.rows; ++r) {
    for (int c = 0; c < grid_.cols; ++c) out.push_back({r, c});
  }
  return out;
}

bool lattice_adjacent(const TrilinearLayout& layout, SiteCoord a, SiteCoord b) {
  if (!layout.in_bounds(a) || !layout.in_bounds(b)) return false;
  if (a.row == b.row && a.depth == b.depth) {
    return layout.axis_distance(a.axis, b.axis) == 1;
  }
  if (a.axis != b.axis) return false;
  if (a.row == b.row) return std::abs(a.depth - b.depth) == 1;
  const bool a_mid = a.row == Row::Middle;
  const bool b_mid = b.row == Row::Middle;
  if (a_mid == b_mid) return false;
  return (a_mid ? b.depth : a.depth) == 0;
}

void DefectMap::add_barrier(SiteCoord a, SiteCoord b) {
  if (b < a) std::swap(a, b);
  barriers_.insert({a, b});
}

bool DefectMap::barrier_dead(SiteCoord a, SiteCoord b) const {
  if (barriers_.empty()) return false;
  if (b < a) std::swap(a, b);
  return barriers_.contains({a, b});
}

void DefectMap::validate(const TrilinearLayout& layout) const {
  for (const auto& site : sites_) {
    if (!layout.in_bounds(site)) {
      throw Error(ErrorCode::InvalidSite, "dead site " + to_string(site) + " out of bounds");
    }
  }
  for (const auto& [a, b] : barriers_) {
    if (!lattice_adjacent(layout, a, b)) {
      throw Error(ErrorCode::InvalidSite,
                  "dead barrier " + to_string(a) + "-" + to_string(b) +
                      " does not join adjacent sites");
    }
  }
}

TrilinearLayout map_to_trilinear(GridSpec grid, Length pitch, bool loop, int m_rows) {
  return TrilinearLayout(grid, pitch, loop, m_rows);
}

std::optional<Cell> site_to_grid(const TrilinearLayout& layout, SiteCoord site) {
  return layout.cell_at(site);
}

std::vector<Cell> neighbors_2d(const GridSpec& grid, Cell cell) {
  std::vector<Cell> out;
  const Cell candidates[] = {{cell.row - 1, cell.col},
                             {cell.row, cell.col - 1},
                             {cell.row, cell.col + 1},
                             {cell.row + 1, cell.col}};
  for (const auto& c : candidates) {
    if (grid.contains(c)) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace trilinear
