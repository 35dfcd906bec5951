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

#include "hipkernels/dist.hpp"

#include <algorithm>
#include <string>

#include "hipkernels/error.hpp"
#include "hipkernels/runtime.hpp"

namespace hipkernels {

void canonicalize(CooMatrix& coo) {
  std::sort(coo.entries.begin(), coo.entries.end(),
            [](const CooEntry& a, const CooEntry& b) {
              return a.col != b.col ? a.col < b.col : a.row < b.row;
            });
}

index_t DistMatrix::total_nnz() const {
  index_t total = 0;
  for (const LocalDcsc& block : blocks) total += block.nnz();
  return total;
}

std::vector<index_t> DistMatrix::nnz_per_rank() const {
  std::vector<index_t> counts;
  counts.reserve(blocks.size());
  for (const LocalDcsc& block : blocks) counts.push_back(block.nnz());
  return counts;
}

DistVector DistVector::from_global(std::span<const index_t> values,
                                   const VectorLayout& layout) {
  if (static_cast<index_t>(values.size()) != layout.length()) {
    throw Error(Errc::dimension_mismatch,
                "vector of length " + std::to_string(values.size()) +
                    " does not fit a layout of length " +
                    std::to_string(layout.length()));
  }
  DistVector out{layout, {}};
  out.pieces.resize(static_cast<std::size_t>(layout.grid().nprocs()));
  for (int rank = 0; rank < layout.grid().nprocs(); ++rank) {
    const BlockRange range = layout.range_of_rank(rank);
    auto& piece = out.pieces[static_cast<std::size_t>(rank)];
    piece.assign(values.begin() + range.begin, values.begin() + range.end);
  }
  return out;
}

std::vector<index_t> DistVector::to_global() const {
  std::vector<index_t> out(static_cast<std::size_t>(layout.length()));
  for (int rank = 0; rank < layout.grid().nprocs(); ++rank) {
    const BlockRange range = layout.range_of_rank(rank);
    const auto& piece = pieces[static_cast<std::size_t>(rank)];
    std::copy(piece.begin(), piece.end(),
              out.begin() + static_cast<std::size_t>(range.begin));
  }
  return out;
}

DistSparseVector DistSparseVector::from_pairs(std::span<const SparsePair> pairs,
                                              const VectorLayout& layout) {
  DistSparseVector out{layout, {}};
  out.pieces.resize(static_cast<std::size_t>(layout.grid().nprocs()));
  for (const SparsePair& p : pairs) {
    out.pieces[static_cast<std::size_t>(layout.owner(p.index))].push_back(p);
  }
  for (auto& piece : out.pieces) {
    std::sort(piece.begin(), piece.end(),
              [](const SparsePair& a, const SparsePair& b) {
                return a.index < b.index;
              });
    for (std::size_t i = 1; i < piece.size(); ++i) {
      if (piece[i].index == piece[i - 1].index) {
        throw Error(Errc::duplicate_index,
                    "sparse vector index " + std::to_string(piece[i].index) +
                        " appears twice");
      }
    }
  }
  return out;
}

std::vector<SparsePair> DistSparseVector::to_pairs() const {
  std::vector<SparsePair> out;
  for (const auto& piece : pieces) {
    out.insert(out.end(), piece.begin(), piece.end());
  }
  std::sort(out.begin(), out.end(),
            [](const SparsePair& a, const SparsePair& b) {
              return a.index < b.index;
            });
  return out;
}

DistMatrix distribute(const CooMatrix& coo, const ProcGrid& grid) {
  const MatrixLayout layout(grid, coo.nrows, coo.ncols);
  // Range errors surface before any rank program runs.
  for (const CooEntry& e : coo.entries) {
    layout.owner_of_entry(e.row, e.col);
  }
  std::vector<LocalDcsc> blocks = run_ranks(
      grid.nprocs(), [&coo, &layout](RankContext& ctx) -> LocalDcsc {
        const BlockRange rows = layout.row_block(ctx.row());
        const BlockRange cols = layout.col_block(ctx.col());
        std::vector<Triple> mine;
        for (const CooEntry& e : coo.entries) {
          if (rows.contains(e.row) && cols.contains(e.col)) {
            mine.push_back({e.row - rows.begin, e.col - cols.begin, e.val});
          }
        }
        std::sort(mine.begin(), mine.end(),
                  [](const Triple& a, const Triple& b) {
                    return a.lcol != b.lcol ? a.lcol < b.lcol
                                            : a.lrow < b.lrow;
                  });
        return LocalDcsc::from_sorted_triples(mine, rows.size(), cols.size());
      });
  return DistMatrix{layout, std::move(blocks)};
}

CooMatrix collect(const DistMatrix& dm) {
  CooMatrix out;
  out.nrows = dm.nrows();
  out.ncols = dm.ncols();
  out.entries.reserve(static_cast<std::size_t>(dm.total_nnz()));
  const ProcGrid& grid = dm.layout.grid();
  for (int rank = 0; rank < grid.nprocs(); ++rank) {
    const GridCoord rc = grid.coord_of(rank);
    const BlockRange rows = dm.layout.row_block(rc.r);
    const BlockRange cols = dm.layout.col_block(rc.c);
    dm.blocks[static_cast<std::size_t>(rank)].for_each(
        [&](index_t li, index_t lj, Value v) {
          out.entries.push_back({rows.begin + li, cols.begin + lj, v});
        });
  }
  canonicalize(out);
  return out;
}

}  // namespace hipkernels
