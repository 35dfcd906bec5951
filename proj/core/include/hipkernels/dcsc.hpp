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
#include <utility>
#include <vector>

#include "hipkernels/types.hpp"

namespace hipkernels {

/// Doubly compressed sparse column storage for one block of a distributed
/// matrix.  Only columns that contain at least one nonzero are represented:
/// `jc` lists those column ids in increasing order, `cp` delimits each
/// column's run inside `ir`/`num`, `ir` holds strictly increasing row ids per
/// column, and `num` the values.  Instances are immutable after construction,
/// so they are safe to read from any number of rank contexts concurrently.
class LocalDcsc {
 public:
  /// Empty block of the given dimensions.
  LocalDcsc() = default;
  LocalDcsc(index_t nrows, index_t ncols) : nrows_(nrows), ncols_(ncols) {}

  /// Builds a block from triples sorted by (column, row).
  ///
  /// Throws UnsortedInput when the ordering is violated, DuplicateCoordinate
  /// when two triples share a coordinate, and IndexOutOfBounds when a
  /// coordinate falls outside [0,nrows) x [0,ncols).
  static LocalDcsc from_sorted_triples(std::span<const Triple> triples,
                                       index_t nrows, index_t ncols);

  index_t nrows() const { return nrows_; }
  index_t ncols() const { return ncols_; }
  index_t nnz() const { return static_cast<index_t>(num_.size()); }
  /// Number of columns holding at least one nonzero.
  index_t nzc() const { return static_cast<index_t>(jc_.size()); }

  std::span<const index_t> jc() const { return jc_; }
  std::span<const index_t> cp() const { return cp_; }
  std::span<const index_t> ir() const { return ir_; }
  std::span<const Value> num() const { return num_; }

  /// Invokes fn(lrow, lcol, value) for every nonzero in column-major order.
  template <class Fn>
  void for_each(Fn&& fn) const {
    for (std::size_t k = 0; k < jc_.size(); ++k) {
      const index_t col = jc_[k];
      for (index_t off = cp_[k]; off < cp_[k + 1]; ++off) {
        fn(ir_[off], col, num_[off]);
      }
    }
  }

  /// The column-major triple listing; inverse of from_sorted_triples.
  std::vector<Triple> to_triples() const;

  /// Locates a column id in jc.  Returns the compressed position, or -1 when
  /// the column holds no nonzeros.
  index_t find_column(index_t col) const;

  friend bool operator==(const LocalDcsc&, const LocalDcsc&) = default;

 private:
  index_t nrows_ = 0;
  index_t ncols_ = 0;
  std::vector<index_t> jc_;
  std::vector<index_t> cp_ = {0};
  std::vector<index_t> ir_;
  std::vector<Value> num_;
};

}  // namespace hipkernels
