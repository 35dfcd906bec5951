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

#include "hipkernels/dcsc.hpp"
#include "hipkernels/grid.hpp"
#include "hipkernels/types.hpp"

namespace hipkernels {

/// Outgoing side of one exchange round at one rank: every local nonzero,
/// rewritten into destination-local coordinates and grouped by destination
/// rank.  Within a destination the triples appear in the column-major
/// traversal order of the local matrix, which makes the buffer content
/// independent of how many threads prepared it.
struct SendPlan {
  int nthreads = 1;
  int nprocs = 1;
  /// Per-thread, per-destination nonzero counts from the counting pass,
  /// laid out [thread * nprocs + destination].
  std::vector<index_t> nnz_counter;
  /// Start offset of each destination's run inside `buffer` (length nprocs;
  /// destination d occupies [proc_pointer[d], proc_pointer[d+1]) with
  /// buffer.size() closing the last run).
  std::vector<index_t> proc_pointer;
  /// Offset of each thread's contribution within a destination's run,
  /// laid out like nnz_counter.
  std::vector<index_t> thread_offset;
  std::vector<Triple> buffer;

  index_t total() const { return static_cast<index_t>(buffer.size()); }
  index_t count_for(int d) const {
    const index_t end = d + 1 < nprocs ? proc_pointer[static_cast<std::size_t>(d) + 1]
                                       : total();
    return end - proc_pointer[static_cast<std::size_t>(d)];
  }
  std::span<const Triple> for_destination(int d) const {
    return std::span<const Triple>(buffer).subspan(
        static_cast<std::size_t>(proc_pointer[static_cast<std::size_t>(d)]),
        static_cast<std::size_t>(count_for(d)));
  }
  /// Splits the buffer into one vector per destination, ready for exchange.
  std::vector<std::vector<Triple>> dest_buffers() const;
};

/// Position a thread writes its k-th triple for destination d to: the
/// destination's run starts at proc_pointer[d], the thread's slice within
/// that run at thread_offset[t][d].  Distinct (t,d,k) map to distinct
/// positions, which is what lets the writing pass run without locks.
inline index_t send_buffer_index(int t, int d, index_t k,
                                 std::span<const index_t> proc_pointer,
                                 std::span<const index_t> thread_offset,
                                 int nprocs) {
  return proc_pointer[static_cast<std::size_t>(d)] +
         thread_offset[static_cast<std::size_t>(t) *
                           static_cast<std::size_t>(nprocs) +
                       static_cast<std::size_t>(d)] +
         k;
}

/// Identify step for whole-matrix relocation.  row_map/col_map give, for
/// every local row/column index, the destination global row/column; each
/// nonzero (li,lj,v) is routed to the owner of (row_map[li], col_map[lj])
/// under `dst`.  Runs two synchronization-free passes over the local matrix:
/// a counting pass that fills nnz_counter and a writing pass that places
/// each triple via send_buffer_index.  Threads take contiguous column
/// ranges of roughly equal nonzero count; whole columns are never split.
///
/// Throws MappingOutOfRange when a map entry falls outside `dst` or the
/// maps do not cover the local dimensions.  The resulting buffer is
/// bitwise identical for every nthreads.
SendPlan prepare_send_buffer(const LocalDcsc& local,
                             std::span<const index_t> row_map,
                             std::span<const index_t> col_map,
                             const MatrixLayout& dst, int nthreads);

/// Identify step for submatrix extraction.  row_select/col_select hold
/// (local index in this block -> destination global index) pairs sorted by
/// local index; only nonzeros at selected (row, column) intersections are
/// routed.  Each selected column is located in jc and each selected row
/// binary-searched inside that column's row run, so the cost scales with
/// the selection size rather than the block size.  Threads take contiguous
/// equal-count ranges of col_select.
///
/// Throws MappingOutOfRange when a destination index falls outside `dst`,
/// and InvalidArgument when a selection is not sorted by local index.
SendPlan extract_prepare_send_buffer(const LocalDcsc& local,
                                     std::span<const SparsePair> row_select,
                                     std::span<const SparsePair> col_select,
                                     const MatrixLayout& dst, int nthreads);

}  // namespace hipkernels
