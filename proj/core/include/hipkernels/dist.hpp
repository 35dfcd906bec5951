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

#include <span>
#include <vector>

#include "hipkernels/coo.hpp"
#include "hipkernels/dcsc.hpp"
#include "hipkernels/grid.hpp"
#include "hipkernels/types.hpp"

namespace hipkernels {

/// A matrix distributed over a process grid: rank (r,c) owns the doubly
/// compressed block at the intersection of row block r and column block c.
/// Blocks are immutable; operations produce new matrices.
struct DistMatrix {
  MatrixLayout layout;
  std::vector<LocalDcsc> blocks;  // indexed by rank id

  index_t nrows() const { return layout.nrows(); }
  index_t ncols() const { return layout.ncols(); }
  index_t total_nnz() const;
  std::vector<index_t> nnz_per_rank() const;
};

/// An index vector in the two-level block distribution.  Each rank holds a
/// contiguous piece; see VectorLayout for how pieces map to ranks.
struct DistVector {
  VectorLayout layout;
  std::vector<std::vector<index_t>> pieces;  // indexed by rank id

  index_t length() const { return layout.length(); }

  static DistVector from_global(std::span<const index_t> values,
                                const VectorLayout& layout);
  std::vector<index_t> to_global() const;
};

/// A sparse index map distributed over the full index space of its layout.
/// Pair indices are global, unique, and kept sorted within each rank.
struct DistSparseVector {
  VectorLayout layout;
  std::vector<std::vector<SparsePair>> pieces;  // indexed by rank id

  static DistSparseVector from_pairs(std::span<const SparsePair> pairs,
                                     const VectorLayout& layout);
  std::vector<SparsePair> to_pairs() const;
};

/// Splits a coordinate matrix into per-rank blocks.  Runs one rank program
/// per block inside the collective runtime; entries must be in range and
/// duplicate-free.
DistMatrix distribute(const CooMatrix& coo, const ProcGrid& grid);

/// Reassembles the global coordinate list, entries in canonical
/// (column, row) order.
CooMatrix collect(const DistMatrix& dm);

}  // namespace hipkernels
