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

#include "hipkernels/dist.hpp"
#include "hipkernels/metrics.hpp"
#include "hipkernels/runtime.hpp"
#include "hipkernels/types.hpp"

namespace hipkernels {

// Distributed indexing operations.  Each operation runs one
// identify/exchange/build round: every rank works out where its nonzeros
// belong under the new indexing, a single personalized exchange moves the
// triples, and each rank rebuilds its block of the result.  All results are
// new matrices; inputs are never modified.

struct OpOptions {
  /// Worker threads per rank for the identify and build kernels.  The
  /// result is bitwise independent of this value.
  int nthreads = 1;
  /// When set, filled with phase times and exchange counters.
  PhaseMetrics* metrics = nullptr;
};

/// Result[i,j] = A[pvec[i], qvec[j]].  pvec and qvec must be permutations
/// of A's row and column index spaces; violations (repeated or out-of-range
/// targets) raise NotAPermutation, length mismatches DimensionMismatch.
DistMatrix permute(const DistMatrix& a, const DistVector& pvec,
                   const DistVector& qvec, const OpOptions& options = {});

/// Result[i,j] = A[row_select[i], col_select[j]] restricted to A's nonzeros:
/// the |row_select| x |col_select| submatrix.  Selections must be in range
/// (IndexOutOfBounds) and free of repeats (DuplicateIndex).
DistMatrix extract(const DistMatrix& a, const DistVector& row_select,
                   const DistVector& col_select, const OpOptions& options = {});

/// Writes B into A at the selected rows/columns: for every stored B[i,j]
/// the result holds op(existing, incoming) at (row_select[i], col_select[j])
/// when A already stores that entry, and B[i,j] alone otherwise; the rest of
/// A passes through.  B must measure |row_select| x |col_select|
/// (DimensionMismatch); selections must be in range (IndexOutOfBounds) and
/// repeat-free (DuplicateIndex).
DistMatrix assign(const DistMatrix& a, const DistMatrix& b,
                  const DistVector& row_select, const DistVector& col_select,
                  AddOp op, const OpOptions& options = {});

/// assign followed by permute, fused into one exchange round: A's nonzeros
/// travel straight to their permuted positions and B's through the
/// composition of the selection and the permutation.  Equals
/// permute(assign(a, b, row_select, col_select, op), rperm, cperm) exactly.
DistMatrix assign_permute(const DistMatrix& a, const DistMatrix& b,
                          const DistVector& row_select,
                          const DistVector& col_select,
                          const DistVector& rperm, const DistVector& cperm,
                          AddOp op, const OpOptions& options = {});

/// Inverts a permutation: result[v[i]] = i, distributed in `orientation`.
/// Raises NotAPermutation when v repeats a value, leaves one out, or maps
/// outside [0, length).
DistVector swap_index_value(
    const DistVector& v,
    VectorOrientation orientation = VectorOrientation::by_grid_row);

/// Sparse counterpart: each pair (i, t) becomes (t, i), redistributed to
/// the owner of position t under `out_layout`.  Raises DuplicateTarget when
/// two pairs share a target and IndexOutOfBounds when a target is outside
/// the output space.
DistSparseVector sparse_swap_index_value(const DistSparseVector& v,
                                         const VectorLayout& out_layout);

// Rank-level building blocks, callable from inside run_ranks programs.
// Every rank of the run must call them in the same order.

/// This rank's piece of the inverse of `v`, laid out by `out`.
std::vector<index_t> swap_index_value_piece(RankContext& ctx,
                                            const DistVector& v,
                                            const VectorLayout& out);

/// Sparse variant; the returned pairs are sorted by index.
std::vector<SparsePair> sparse_swap_index_value_piece(RankContext& ctx,
                                                      const DistSparseVector& v,
                                                      const VectorLayout& out);

/// Reassembles the full first-level segment this rank's band collectively
/// holds: the grid-row band for a by_grid_row layout, the grid-column band
/// for by_grid_col.  `piece` must be this rank's piece under `layout`.
std::vector<index_t> gather_band_segment(RankContext& ctx,
                                         const VectorLayout& layout,
                                         std::vector<index_t> piece);

/// Sparse variant; pairs come back sorted by (global) index.
std::vector<SparsePair> gather_band_segment_sparse(RankContext& ctx,
                                                   const VectorLayout& layout,
                                                   std::vector<SparsePair> piece);

/// Both band gathers of one identify step: returns (row_map, col_map)
/// covering exactly this rank's row and column blocks.  rowvec must be
/// by_grid_row over the row space and colvec by_grid_col over the column
/// space.
std::pair<std::vector<index_t>, std::vector<index_t>> gather_row_col_maps(
    RankContext& ctx, const DistVector& rowvec, const DistVector& colvec);

}  // namespace hipkernels
