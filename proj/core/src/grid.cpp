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

#include "hipkernels/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hipkernels/error.hpp"

namespace hipkernels {

ProcGrid::ProcGrid(int nprocs) : p_(nprocs) {
  if (nprocs <= 0) {
    throw Error(Errc::invalid_argument, "process count must be positive");
  }
  q_ = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nprocs))));
  if (q_ * q_ != nprocs) {
    throw Error(Errc::invalid_argument,
                "process count " + std::to_string(nprocs) +
                    " is not a perfect square");
  }
}

std::vector<int> row_band_ranks(const ProcGrid& grid, int r) {
  std::vector<int> band(static_cast<std::size_t>(grid.side()));
  for (int c = 0; c < grid.side(); ++c) band[static_cast<std::size_t>(c)] = grid.rank_of(r, c);
  return band;
}

std::vector<int> col_band_ranks(const ProcGrid& grid, int c) {
  std::vector<int> band(static_cast<std::size_t>(grid.side()));
  for (int r = 0; r < grid.side(); ++r) band[static_cast<std::size_t>(r)] = grid.rank_of(r, c);
  return band;
}

index_t balanced_part_start(index_t length, int nparts, int part) {
  const index_t base = length / nparts;
  const index_t extra = length % nparts;
  return part * base + std::min<index_t>(part, extra);
}

int balanced_part_of(index_t length, int nparts, index_t i) {
  const index_t base = length / nparts;
  const index_t extra = length % nparts;
  // The first `extra` parts are one element longer than the rest.
  const index_t big_span = extra * (base + 1);
  if (i < big_span) return static_cast<int>(i / (base + 1));
  return static_cast<int>(extra + (i - big_span) / base);
}

MatrixLayout::MatrixLayout(ProcGrid grid, index_t nrows, index_t ncols)
    : grid_(grid), nrows_(nrows), ncols_(ncols) {
  if (nrows < 0 || ncols < 0) {
    throw Error(Errc::invalid_argument, "negative matrix dimensions");
  }
}

BlockRange MatrixLayout::row_block(int r) const {
  return {balanced_part_start(nrows_, grid_.side(), r),
          balanced_part_start(nrows_, grid_.side(), r + 1)};
}

BlockRange MatrixLayout::col_block(int c) const {
  return {balanced_part_start(ncols_, grid_.side(), c),
          balanced_part_start(ncols_, grid_.side(), c + 1)};
}

std::pair<index_t, index_t> MatrixLayout::block_dims(int r, int c) const {
  return {row_block(r).size(), col_block(c).size()};
}

GridCoord MatrixLayout::owner_of_entry(index_t i, index_t j) const {
  if (i < 0 || i >= nrows_ || j < 0 || j >= ncols_) {
    throw Error(Errc::index_out_of_bounds,
                "entry (" + std::to_string(i) + "," + std::to_string(j) +
                    ") outside " + std::to_string(nrows_) + "x" +
                    std::to_string(ncols_) + " matrix");
  }
  return {balanced_part_of(nrows_, grid_.side(), i),
          balanced_part_of(ncols_, grid_.side(), j)};
}

std::pair<index_t, index_t> MatrixLayout::global_to_local(index_t i,
                                                          index_t j) const {
  const GridCoord owner = owner_of_entry(i, j);
  return {i - row_block(owner.r).begin, j - col_block(owner.c).begin};
}

std::pair<index_t, index_t> MatrixLayout::local_to_global(int r, int c,
                                                          index_t li,
                                                          index_t lj) const {
  const BlockRange rows = row_block(r);
  const BlockRange cols = col_block(c);
  if (li < 0 || li >= rows.size() || lj < 0 || lj >= cols.size()) {
    throw Error(Errc::index_out_of_bounds,
                "local (" + std::to_string(li) + "," + std::to_string(lj) +
                    ") outside block at grid (" + std::to_string(r) + "," +
                    std::to_string(c) + ")");
  }
  return {rows.begin + li, cols.begin + lj};
}

VectorLayout::VectorLayout(ProcGrid grid, index_t length,
                           VectorOrientation orientation)
    : grid_(grid), length_(length), orientation_(orientation) {
  if (length < 0) {
    throw Error(Errc::invalid_argument, "negative vector length");
  }
}

BlockRange VectorLayout::segment(int s) const {
  return {balanced_part_start(length_, grid_.side(), s),
          balanced_part_start(length_, grid_.side(), s + 1)};
}

BlockRange VectorLayout::range_of_rank(int rank) const {
  const GridCoord rc = grid_.coord_of(rank);
  const int s = orientation_ == VectorOrientation::by_grid_row ? rc.r : rc.c;
  const int piece = orientation_ == VectorOrientation::by_grid_row ? rc.c : rc.r;
  const BlockRange seg = segment(s);
  return {seg.begin + balanced_part_start(seg.size(), grid_.side(), piece),
          seg.begin + balanced_part_start(seg.size(), grid_.side(), piece + 1)};
}

int VectorLayout::owner(index_t idx) const {
  if (idx < 0 || idx >= length_) {
    throw Error(Errc::index_out_of_bounds,
                "vector position " + std::to_string(idx) + " outside [0," +
                    std::to_string(length_) + ")");
  }
  const int s = balanced_part_of(length_, grid_.side(), idx);
  const BlockRange seg = segment(s);
  const int piece = balanced_part_of(seg.size(), grid_.side(), idx - seg.begin);
  return orientation_ == VectorOrientation::by_grid_row
             ? grid_.rank_of(s, piece)
             : grid_.rank_of(piece, s);
}

}  // namespace hipkernels
