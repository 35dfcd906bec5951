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

#include <cstdint>
#include <vector>

#include "hipkernels/dcsc.hpp"
#include "hipkernels/types.hpp"

namespace hipkernels {

/// Build step of an exchange round: assembles the received triples into the
/// local block of the result matrix.  `recv` holds one buffer per source
/// rank, in source-rank order.  The concatenated sequence is cut into
/// exactly 4 x nthreads equal-size chunks, each chunk is sorted by
/// (column, row), and the sorted runs are merged; the result is packed into
/// doubly compressed column form.  Output is bitwise identical for any
/// nthreads (and hence any chunking).
///
/// Throws DuplicateCoordinate if two received triples collide and
/// IndexOutOfBounds if a triple falls outside the block.
LocalDcsc build_local_matrix(const std::vector<std::vector<Triple>>& recv,
                             index_t nrows, index_t ncols, int nthreads);

/// A relocated nonzero plus where it came from, used when one exchange
/// round carries both the base matrix and an assigned submatrix.
struct TaggedTriple {
  index_t lrow = 0;
  index_t lcol = 0;
  Value val = 0.0;
  /// 0 = existing (base matrix) entry, 1 = incoming (assigned) entry.
  std::uint8_t origin = 0;

  friend bool operator==(const TaggedTriple&, const TaggedTriple&) = default;
};

/// Variant of build_local_matrix for fused assignment: where an existing
/// and an incoming triple land on the same coordinate the two are combined
/// with `op` (existing first); same-origin collisions are still an error.
LocalDcsc build_local_matrix_resolving(
    const std::vector<std::vector<TaggedTriple>>& recv, index_t nrows,
    index_t ncols, AddOp op, int nthreads);

}  // namespace hipkernels
