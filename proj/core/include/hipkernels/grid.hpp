/*
 * Copyright 2026 The hipkernels Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <utility>
#include <vector>

#include "hipkernels/types.hpp"

namespace hipkernels {

struct GridCoord {
  int r = 0;
  int c = 0;

  friend bool operator==(const GridCoord&, const GridCoord&) = default;
};

/// Half-open index range [begin, end).
struct BlockRange {
  index_t begin = 0;
  index_t end = 0;

  index_t size() const { return end - begin; }
  bool contains(index_t i) const { return i >= begin && i < end; }

  friend bool operator==(const BlockRange&, const BlockRange&) = default;
};

/// Square process grid of p ranks arranged as q x q, q = sqrt(p).  Rank ids
/// are row-major: rank(r,c) = r*q + c.
class ProcGrid {
 public:
  /// Throws InvalidArgument unless p is a positive perfect square.
  explicit ProcGrid(int nprocs);

  int nprocs() const { return p_; }
  int side() const { return q_; }

  int rank_of(int r, int c) const { return r * q_ + c; }
  GridCoord coord_of(int rank) const { return {rank / q_, rank % q_}; }

  friend bool operator==(const ProcGrid&, const ProcGrid&) = default;

 private:
  int p_;
  int q_;
};

/// Ranks of grid row r in ascending grid-column order.
std::vector<int> row_band_ranks(const ProcGrid& grid, int r);
/// Ranks of grid column c in ascending grid-row order.
std::vector<int> col_band_ranks(const ProcGrid& grid, int c);

/// Splits a length-L index space into q contiguous parts, the first L mod q
/// of size ceil(L/q) and the rest of size floor(L/q).  Returns the start of
/// part i; part q's start equals L.
index_t balanced_part_start(index_t length, int nparts, int part);
/// The part containing index i under the same split.
int balanced_part_of(index_t length, int nparts, index_t i);

/// 2D block distribution of an m x n matrix over a grid: rank (r,c) owns the
/// intersection of row block r and column block c, blocks sized by the
/// balanced split above.
class MatrixLayout {
 public:
  MatrixLayout(ProcGrid grid, index_t nrows, index_t ncols);

  const ProcGrid& grid() const { return grid_; }
  index_t nrows() const { return nrows_; }
  index_t ncols() const { return ncols_; }

  BlockRange row_block(int r) const;
  BlockRange col_block(int c) const;
  /// Dimensions of the block owned by rank (r,c).
  std::pair<index_t, index_t> block_dims(int r, int c) const;

  /// Grid coordinates of the rank owning global entry (i,j).
  GridCoord owner_of_entry(index_t i, index_t j) const;
  /// Global (i,j) -> coordinates local to the owning block.
  std::pair<index_t, index_t> global_to_local(index_t i, index_t j) const;
  /// Block-local (li,lj) at rank (r,c) -> global coordinates.
  std::pair<index_t, index_t> local_to_global(int r, int c, index_t li,
                                              index_t lj) const;

  friend bool operator==(const MatrixLayout&, const MatrixLayout&) = default;

 private:
  ProcGrid grid_;
  index_t nrows_;
  index_t ncols_;
};

/// Which axis of the grid owns the first-level segments of a distributed
/// vector.  A by_grid_row vector assigns segment s to grid row s and splits
/// it among that row's ranks by grid column; by_grid_col mirrors the roles.
/// Row maps are stored by_grid_row and column maps by_grid_col so that a
/// band allgather reassembles exactly the segment a rank's block needs.
enum class VectorOrientation { by_grid_row, by_grid_col };

/// Two-level block distribution of a length-L index space over the grid.
class VectorLayout {
 public:
  VectorLayout(ProcGrid grid, index_t length,
               VectorOrientation orientation = VectorOrientation::by_grid_row);

  const ProcGrid& grid() const { return grid_; }
  index_t length() const { return length_; }
  VectorOrientation orientation() const { return orientation_; }

  /// First-level segment s as a global range.
  BlockRange segment(int s) const;
  /// Global range held by one rank.
  BlockRange range_of_rank(int rank) const;
  /// Rank id owning global position idx.  Throws IndexOutOfBounds for
  /// positions outside [0, length).
  int owner(index_t idx) const;

  friend bool operator==(const VectorLayout&, const VectorLayout&) = default;

 private:
  ProcGrid grid_;
  index_t length_;
  VectorOrientation orientation_;
};

}  // namespace hipkernels
