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

namespace hipkernels {

/// Row/column/position index.  All indices are 0-based inside the library;
/// the 1-based convention of the on-disk formats is translated at the I/O
/// boundary and nowhere else.
using index_t = std::int64_t;

/// Numeric value attached to a nonzero.  Values must be finite; NaN is
/// rejected when files are ingested.  A stored zero is an ordinary nonzero
/// structurally.
using Value = double;

/// One nonzero in block-local coordinates, the unit of data carried by the
/// exchange step.
struct Triple {
  index_t lrow = 0;
  index_t lcol = 0;
  Value val = 0.0;

  friend bool operator==(const Triple&, const Triple&) = default;
};

/// One element of a sparse index map: `index` is a position in the dense
/// index space, `value` the index it maps to.
struct SparsePair {
  index_t index = 0;
  index_t value = 0;

  friend bool operator==(const SparsePair&, const SparsePair&) = default;
};

/// User-selectable combiner applied where an assigned submatrix overlaps an
/// existing nonzero.
enum class AddOp {
  arithmetic_sum,  ///< existing + incoming
  select_second,   ///< incoming value wins
  logical_or,      ///< any nonzero counts as true; result is 1.0
};

/// Combines an existing and an incoming value.  Kept inline and free of any
/// kernel machinery so the brute-force reference implementations can share
/// the exact same combiner without linking against the kernels.
inline Value apply_addop(AddOp op, Value existing, Value incoming) {
  switch (op) {
    case AddOp::arithmetic_sum: return existing + incoming;
    case AddOp::select_second: return incoming;
    case AddOp::logical_or: return (existing != 0.0 || incoming != 0.0) ? 1.0 : 0.0;
  }
  return incoming;
}

}  // namespace hipkernels
