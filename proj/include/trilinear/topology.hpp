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

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace trilinear {

/// A position in the logical 2D qubit grid, 0-based.
struct Cell {
  int row = 0;
  int col = 0;

  auto operator<=>(const Cell&) const = default;
};

struct GridSpec {
  int rows = 0;
  int cols = 0;

  int qubit_count() const { return rows * cols; }
  bool contains(Cell cell) const {
    return cell.row >= 0 && cell.row < rows && cell.col >= 0 && cell.col < cols;
  }
  /// Row-major qubit id.
  int qubit_id(Cell cell) const { return cell.row * cols + cell.col; }
  Cell cell_of(int qubit) const { return {qubit / cols, qubit % cols}; }

  auto operator<=>(const GridSpec&) const = default;
};

enum class Row : std::uint8_t { Upper = 0, Middle = 1, Lower = 2 };

char row_letter(Row row);
Row row_from_letter(char letter);

/// A dot site. `depth` indexes the stacked sub-rows of an M-row layout and is
/// 0 for the sub-row facing the middle lane (always 0 for Middle sites).
struct SiteCoord {
  Row row = Row::Middle;
  int axis = 0;
  int depth = 0;

  auto operator<=>(const SiteCoord&) const = default;
};

std::string to_string(SiteCoord site);
std::string to_string(Cell cell);

/// Physical length, stored in nanometres.
class Length {
 public:
  constexpr Length() = default;
  static constexpr Length nm(double value) { return Length(value); }
  static constexpr Length um(double value) { return Length(value * 1000.0); }

  constexpr double nm() const { return nm_; }
  constexpr double um() const { return nm_ / 1000.0; }

  constexpr Length operator*(double k) const { return Length(nm_ * k); }
  constexpr Length operator+(Length other) const { return Length(nm_ + other.nm_); }
  constexpr auto operator<=>(const Length&) const = default;

 private:
  constexpr explicit Length(double nm) : nm_(nm) {}
  double nm_ = 0.0;
};

/// Three parallel dot rows. Even grid rows live in the Upper row, odd grid
/// rows in the Lower row shifted right by half a block; the Middle row is an
/// empty shuttling lane spanning both.
class TrilinearLayout {
 public:
  TrilinearLayout(GridSpec grid, Length pitch, bool loop, int m_rows);

  const GridSpec& grid() const { return grid_; }
  Length pitch() const { return pitch_; }
  bool loop() const { return loop_; }
  int m_rows() const { return m_rows_; }

  /// Axis extent of one grid row after folding into `m_rows` sub-rows.
  int block_width() const { return block_width_; }
  int shift() const { return block_width_ / 2; }
  int upper_len() const { return upper_len_; }
  int lower_len() const { return lower_len_; }
  /// Axis length shared by all three rows (the middle-row length).
  int length() const { return length_; }

  bool in_bounds(SiteCoord site) const;
  SiteCoord site_of(Cell cell) const;
  /// Inverse mapping; nullopt for Middle sites and unmapped outer dots.
  std::optional<Cell> cell_at(SiteCoord site) const;

  /// Normalizes an axis index onto [0, length) for loops; identity otherwise.
  int wrap(int axis) const;
  int axis_distance(int a, int b) const;

  std::vector<Cell> cells() const;

  bool operator==(const TrilinearLayout&) const = default;

 private:
  GridSpec grid_;
  Length pitch_;
  bool loop_ = false;
  int m_rows_ = 1;
  int block_width_ = 0;
  int upper_len_ = 0;
  int lower_len_ = 0;
  int length_ = 0;
};

using Barrier = std::pair<SiteCoord, SiteCoord>;

bool lattice_adjacent(const TrilinearLayout& layout, SiteCoord a, SiteCoord b);

/// Unusable dots and uncontrollable tunnel barriers.
class DefectMap {
 public:
  void add_site(SiteCoord site) { sites_.insert(site); }
  void add_barrier(SiteCoord a, SiteCoord b);

  bool site_dead(SiteCoord site) const { return sites_.contains(site); }
  bool barrier_dead(SiteCoord a, SiteCoord b) const;
  bool empty() const { return sites_.empty() && barriers_.empty(); }

  const std::set<SiteCoord>& sites() const { return sites_; }
  const std::set<Barrier>& barriers() const { return barriers_; }

  /// Throws InvalidSite for out-of-bounds members or non-adjacent barriers.
  void validate(const TrilinearLayout& layout) const;

  bool operator==(const DefectMap&) const = default;

 private:
  std::set<SiteCoord> sites_;
  std::set<Barrier> barriers_;
};

TrilinearLayout map_to_trilinear(GridSpec grid, Length pitch = Length::nm(100.0),
                                 bool loop = false, int m_rows = 1);

std::optional<Cell> site_to_grid(const TrilinearLayout& layout, SiteCoord site);

std::vector<Cell> neighbors_2d(const GridSpec& grid, Cell cell);

}  // namespace trilinear
