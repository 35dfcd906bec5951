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

#include "hipkernels/local_add.hpp"

#include <string>
#include <vector>

#include "hipkernels/error.hpp"

namespace hipkernels {

namespace {

/// Appends column `col`, merging the row runs [a_lo,a_hi) of `a` and
/// [b_lo,b_hi) of `b`; overlapping rows are combined with `op`.
void merge_column(const LocalDcsc& a, index_t a_lo, index_t a_hi,
                  const LocalDcsc& b, index_t b_lo, index_t b_hi, index_t col,
                  AddOp op, std::vector<Triple>& out) {
  const auto a_ir = a.ir();
  const auto a_num = a.num();
  const auto b_ir = b.ir();
  const auto b_num = b.num();
  index_t i = a_lo;
  index_t j = b_lo;
  while (i < a_hi && j < b_hi) {
    const index_t ra = a_ir[static_cast<std::size_t>(i)];
    const index_t rb = b_ir[static_cast<std::size_t>(j)];
    if (ra < rb) {
      out.push_back({ra, col, a_num[static_cast<std::size_t>(i++)]});
    } else if (rb < ra) {
      out.push_back({rb, col, b_num[static_cast<std::size_t>(j++)]});
    } else {
      out.push_back({ra, col,
                     apply_addop(op, a_num[static_cast<std::size_t>(i)],
                                 b_num[static_cast<std::size_t>(j)])});
      ++i;
      ++j;
    }
  }
  for (; i < a_hi; ++i) {
    out.push_back({a_ir[static_cast<std::size_t>(i)], col,
                   a_num[static_cast<std::size_t>(i)]});
  }
  for (; j < b_hi; ++j) {
    out.push_back({b_ir[static_cast<std::size_t>(j)], col,
                   b_num[static_cast<std::size_t>(j)]});
  }
}

}  // namespace

LocalDcsc local_add(const LocalDcsc& a, const LocalDcsc& b, AddOp op) {
  if (a.nrows() != b.nrows() || a.ncols() != b.ncols()) {
    throw Error(Errc::dimension_mismatch,
                "cannot add " + std::to_string(a.nrows()) + "x" +
                    std::to_string(a.ncols()) + " and " +
                    std::to_string(b.nrows()) + "x" +
                    std::to_string(b.ncols()) + " blocks");
  }
  std::vector<Triple> merged;
  merged.reserve(static_cast<std::size_t>(a.nnz() + b.nnz()));

  const auto a_jc = a.jc();
  const auto a_cp = a.cp();
  const auto b_jc = b.jc();
  const auto b_cp = b.cp();
  std::size_t ka = 0;
  std::size_t kb = 0;
  while (ka < a_jc.size() && kb < b_jc.size()) {
    if (a_jc[ka] < b_jc[kb]) {
      merge_column(a, a_cp[ka], a_cp[ka + 1], b, 0, 0, a_jc[ka], op, merged);
      ++ka;
    } else if (b_jc[kb] < a_jc[ka]) {
      merge_column(a, 0, 0, b, b_cp[kb], b_cp[kb + 1], b_jc[kb], op, merged);
      ++kb;
    } else {
      merge_column(a, a_cp[ka], a_cp[ka + 1], b, b_cp[kb], b_cp[kb + 1],
                   a_jc[ka], op, merged);
      ++ka;
      ++kb;
    }
  }
  for (; ka < a_jc.size(); ++ka) {
    merge_column(a, a_cp[ka], a_cp[ka + 1], b, 0, 0, a_jc[ka], op, merged);
  }
  for (; kb < b_jc.size(); ++kb) {
    merge_column(a, 0, 0, b, b_cp[kb], b_cp[kb + 1], b_jc[kb], op, merged);
  }
  return LocalDcsc::from_sorted_triples(merged, a.nrows(), a.ncols());
}

}  // namespace hipkernels
