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

#include <vector>

#include "hipkernels/types.hpp"

namespace hipkernels {

/// One nonzero in global coordinates.
struct CooEntry {
  index_t row = 0;
  index_t col = 0;
  Value val = 0.0;

  friend bool operator==(const CooEntry&, const CooEntry&) = default;
};

/// A whole matrix as a flat coordinate list, the exchange format between
/// files and the distributed representation.
struct CooMatrix {
  index_t nrows = 0;
  index_t ncols = 0;
  std::vector<CooEntry> entries;

  index_t nnz() const { return static_cast<index_t>(entries.size()); }

  friend bool operator==(const CooMatrix&, const CooMatrix&) = default;
};

/// Orders entries by (column, row), the library's canonical entry order.
void canonicalize(CooMatrix& coo);

}  // namespace hipkernels
