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

#include <optional>
#include <span>
#include <vector>

#include "hipkernels/coo.hpp"
#include "hipkernels/types.hpp"

namespace hipkernels::oracle {

// Brute-force reference implementations used to check the distributed
// operations.  Everything here is double loops over a dense grid of
// optional values; none of the kernel or runtime code is reused, so an
// agreement between the two sides is meaningful.  Dense storage caps
// practical inputs at a few thousand rows and columns.

/// Dense matrix of optional values; an absent cell is a structural zero,
/// which is distinct from a stored 0.0.
struct DenseRef {
  index_t m = 0;
  index_t n = 0;
  std::vector<std::optional<Value>> cells;  // row-major, size m * n

  DenseRef() = default;
  DenseRef(index_t m_, index_t n_);

  std::optional<Value>& at(index_t i, index_t j);
  const std::optional<Value>& at(index_t i, index_t j) const;

  /// Entries must be in range and unique (IndexOutOfBounds,
  /// DuplicateEntry).
  static DenseRef from_coo(const CooMatrix& coo);
  /// Present cells in (column, row) order, the library's canonical order.
  CooMatrix to_coo() const;

  friend bool operator==(const DenseRef&, const DenseRef&) = default;
};

/// result[i,j] = A[pvec[i], qvec[j]] with pvec, qvec bijections on the row
/// and column spaces (NotAPermutation otherwise).
DenseRef oracle_permute(const DenseRef& a, std::span<const index_t> pvec,
                        std::span<const index_t> qvec);

/// The |rows| x |cols| submatrix result[i,j] = A[rows[i], cols[j]].
/// Indices must be in range (IndexOutOfBounds); repeats simply repeat.
DenseRef oracle_extract(const DenseRef& a, std::span<const index_t> rows,
                        std::span<const index_t> cols);

/// Copy of A with B written in at (rows[i], cols[j]): combined with the
/// existing value via `op` when A stores one, taken as-is otherwise.
/// Indices must be in range (IndexOutOfBounds) and distinct per axis
/// (DuplicateIndex); B must measure |rows| x |cols| (DimensionMismatch).
DenseRef oracle_assign(const DenseRef& a, const DenseRef& b,
                       std::span<const index_t> rows,
                       std::span<const index_t> cols, AddOp op);

}  // namespace hipkernels::oracle
