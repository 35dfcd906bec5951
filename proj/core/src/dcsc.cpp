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

#include "hipkernels/dcsc.hpp"

#include <algorithm>
#include <string>

#include "hipkernels/error.hpp"

namespace hipkernels {

LocalDcsc LocalDcsc::from_sorted_triples(std::span<const Triple> triples,
                                         index_t nrows, index_t ncols) {
  if (nrows < 0 || ncols < 0) {
    throw Error(Errc::invalid_argument, "negative block dimensions");
  }
  LocalDcsc out(nrows, ncols);
  out.ir_.reserve(triples.size());
  out.num_.reserve(triples.size());

  for (std::size_t k = 0; k < triples.size(); ++k) {
    const Triple& t = triples[k];
    if (t.lrow < 0 || t.lrow >= nrows || t.lcol < 0 || t.lcol >= ncols) {
      throw Error(Errc::index_out_of_bounds,
                  "triple (" + std::to_string(t.lrow) + "," +
                      std::to_string(t.lcol) + ") outside " +
                      std::to_string(nrows) + "x" + std::to_string(ncols) +
                      " block");
    }
    if (k > 0) {
      const Triple& prev = triples[k - 1];
      if (t.lcol < prev.lcol || (t.lcol == prev.lcol && t.lrow < prev.lrow)) {
        throw Error(Errc::unsorted_input,
                    "triples not sorted by (column, row) at position " +
                        std::to_string(k));
      }
      if (t.lcol == prev.lcol && t.lrow == prev.lrow) {
        throw Error(Errc::duplicate_coordinate,
                    "coordinate (" + std::to_string(t.lrow) + "," +
                        std::to_string(t.lcol) + ") appears twice");
      }
    }
    if (out.jc_.empty() || out.jc_.back() != t.lcol) {
      out.jc_.push_back(t.lcol);
      out.cp_.push_back(out.cp_.back());
    }
    ++out.cp_.back();
    out.ir_.push_back(t.lrow);
    out.num_.push_back(t.val);
  }
  return out;
}

std::vector<Triple> LocalDcsc::to_triples() const {
  std::vector<Triple> out;
  out.reserve(num_.size());
  for_each([&out](index_t i, index_t j, Value v) { out.push_back({i, j, v}); });
  return out;
}

index_t LocalDcsc::find_column(index_t col) const {
  auto it = std::lower_bound(jc_.begin(), jc_.end(), col);
  if (it == jc_.end() || *it != col) return -1;
  return static_cast<index_t>(it - jc_.begin());
}

}  // namespace hipkernels
