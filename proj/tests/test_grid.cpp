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

#include <utility>
#include <vector>

#include "doctest.h"
#include "hipkernels/error.hpp"
#include "hipkernels/grid.hpp"

using namespace hipkernels;

TEST_CASE("grid side is the square root of the rank count") {
  CHECK(ProcGrid(1).side() == 1);
  CHECK(ProcGrid(4).side() == 2);
  CHECK(ProcGrid(9).side() == 3);
  CHECK(ProcGrid(16).side() == 4);
}

TEST_CASE("non-square rank counts are rejected") {
  for (int p : {0, -1, 2, 3, 5, 8, 12}) {
    try {
      ProcGrid grid(p);
      FAIL("expected an exception for p=", p);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::invalid_argument);
    }
  }
}

TEST_CASE("rank ids are row-major over grid coordinates") {
  const ProcGrid grid(9);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const int rank = grid.rank_of(r, c);
      CHECK(rank == r * 3 + c);
      CHECK(grid.coord_of(rank) == GridCoord{r, c});
    }
  }
}

TEST_CASE("band listings walk one grid row or column in order") {
  const ProcGrid grid(4);
  CHECK(row_band_ranks(grid, 0) == std::vector<int>{0, 1});
  CHECK(row_band_ranks(grid, 1) == std::vector<int>{2, 3});
  CHECK(col_band_ranks(grid, 1) == std::vector<int>{1, 3});
  CHECK(col_band_ranks(grid, 0) == std::vector<int>{0, 2});

  const ProcGrid solo(1);
  CHECK(row_band_ranks(solo, 0) == std::vector<int>{0});
  CHECK(col_band_ranks(solo, 0) == std::vector<int>{0});
}

TEST_CASE("balanced split gives the first parts the extra element") {
  // length 7 over 3 parts: sizes 3, 2, 2.
  CHECK(balanced_part_start(7, 3, 0) == 0);
  CHECK(balanced_part_start(7, 3, 1) == 3);
  CHECK(balanced_part_start(7, 3, 2) == 5);
  CHECK(balanced_part_start(7, 3, 3) == 7);
  // Exact division degenerates to equal parts.
  CHECK(balanced_part_start(8, 2, 1) == 4);

  for (index_t i = 0; i < 7; ++i) {
    const int part = balanced_part_of(7, 3, i);
    CHECK(balanced_part_start(7, 3, part) <= i);
    CHECK(i < balanced_part_start(7, 3, part + 1));
  }
}

TEST_CASE("entry ownership matches the worked 8x8 example") {
  const MatrixLayout layout(ProcGrid(4), 8, 8);
  // Global (1,6) lives in the lower-right quadrant's neighbor: row block 0
  // covers rows 0..3, column block 1 covers columns 4..7.
  CHECK(layout.owner_of_entry(1, 6) == GridCoord{0, 1});
  CHECK(layout.global_to_local(1, 6) == std::pair<index_t, index_t>{1, 2});
  CHECK(layout.local_to_global(0, 1, 1, 2) ==
        std::pair<index_t, index_t>{1, 6});
}

TEST_CASE("a single rank owns everything") {
  const MatrixLayout layout(ProcGrid(1), 5, 9);
  CHECK(layout.owner_of_entry(0, 0) == GridCoord{0, 0});
  CHECK(layout.owner_of_entry(4, 8) == GridCoord{0, 0});
  CHECK(layout.global_to_local(4, 8) == std::pair<index_t, index_t>{4, 8});
}

TEST_CASE("balanced blocks place 10x10 entry (7,2) on grid (1,0)") {
  const MatrixLayout layout(ProcGrid(4), 10, 10);
  CHECK(layout.row_block(0) == BlockRange{0, 5});
  CHECK(layout.row_block(1) == BlockRange{5, 10});
  CHECK(layout.owner_of_entry(7, 2) == GridCoord{1, 0});
  CHECK(layout.global_to_local(7, 2) == std::pair<index_t, index_t>{2, 2});
}

TEST_CASE("block starts map to local origin") {
  const MatrixLayout layout(ProcGrid(9), 11, 7);
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      const BlockRange rows = layout.row_block(r);
      const BlockRange cols = layout.col_block(c);
      if (rows.size() == 0 || cols.size() == 0) continue;
      CHECK(layout.global_to_local(rows.begin, cols.begin) ==
            std::pair<index_t, index_t>{0, 0});
    }
  }
}

TEST_CASE("ownership partitions the whole matrix") {
  for (int p : {1, 4, 9}) {
    const MatrixLayout layout(ProcGrid(p), 10, 7);
    const int q = layout.grid().side();
    index_t area = 0;
    for (int r = 0; r < q; ++r) {
      for (int c = 0; c < q; ++c) {
        const auto [br, bc] = layout.block_dims(r, c);
        area += br * bc;
      }
    }
    CHECK(area == 10 * 7);

    for (index_t i = 0; i < 10; ++i) {
      for (index_t j = 0; j < 7; ++j) {
        const GridCoord owner = layout.owner_of_entry(i, j);
        CHECK(layout.row_block(owner.r).contains(i));
        CHECK(layout.col_block(owner.c).contains(j));
        const auto [li, lj] = layout.global_to_local(i, j);
        CHECK(layout.local_to_global(owner.r, owner.c, li, lj) ==
              std::pair<index_t, index_t>{i, j});
      }
    }
  }
}

TEST_CASE("matrix bounds are enforced") {
  const MatrixLayout layout(ProcGrid(4), 8, 8);
  for (auto [i, j] : {std::pair<index_t, index_t>{8, 0},
                      std::pair<index_t, index_t>{0, 8},
                      std::pair<index_t, index_t>{-1, 0},
                      std::pair<index_t, index_t>{0, -1}}) {
    try {
      layout.owner_of_entry(i, j);
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::index_out_of_bounds);
    }
  }
}

TEST_CASE("two-level vector ownership for an even split") {
  const VectorLayout layout(ProcGrid(4), 8, VectorOrientation::by_grid_row);
  const std::vector<int> expected = {0, 0, 1, 1, 2, 2, 3, 3};
  for (index_t idx = 0; idx < 8; ++idx) {
    CHECK(layout.owner(idx) == expected[static_cast<std::size_t>(idx)]);
  }
  CHECK(layout.segment(0) == BlockRange{0, 4});
  CHECK(layout.segment(1) == BlockRange{4, 8});
  CHECK(layout.range_of_rank(2) == BlockRange{4, 6});
}

TEST_CASE("column-oriented vectors assign segments to grid columns") {
  const VectorLayout layout(ProcGrid(4), 8, VectorOrientation::by_grid_col);
  // Segment 0 belongs to grid column 0 = ranks {0,2}; segment 1 to {1,3}.
  const std::vector<int> expected = {0, 0, 2, 2, 1, 1, 3, 3};
  for (index_t idx = 0; idx < 8; ++idx) {
    CHECK(layout.owner(idx) == expected[static_cast<std::size_t>(idx)]);
  }
}

TEST_CASE("vector pieces cover an odd length exactly once") {
  for (VectorOrientation orientation :
       {VectorOrientation::by_grid_row, VectorOrientation::by_grid_col}) {
    const VectorLayout layout(ProcGrid(4), 7, orientation);
    std::vector<int> hits(7, 0);
    for (int rank = 0; rank < 4; ++rank) {
      const BlockRange range = layout.range_of_rank(rank);
      for (index_t idx = range.begin; idx < range.end; ++idx) {
        CHECK(layout.owner(idx) == rank);
        hits[static_cast<std::size_t>(idx)] += 1;
      }
    }
    for (int h : hits) CHECK(h == 1);
    // Level one: 7 = 4 + 3; level two of segment 0: 4 = 2 + 2.
    CHECK(layout.segment(0) == BlockRange{0, 4});
    CHECK(layout.segment(1) == BlockRange{4, 7});
  }
}

TEST_CASE("single-rank vectors have one piece") {
  const VectorLayout layout(ProcGrid(1), 5);
  for (index_t idx = 0; idx < 5; ++idx) CHECK(layout.owner(idx) == 0);
  CHECK(layout.range_of_rank(0) == BlockRange{0, 5});
}

TEST_CASE("vector bounds are enforced") {
  const VectorLayout layout(ProcGrid(4), 8);
  for (index_t idx : {index_t{-1}, index_t{8}}) {
    try {
      layout.owner(idx);
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::index_out_of_bounds);
    }
  }
}
