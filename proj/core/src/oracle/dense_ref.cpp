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

#include "hipkernels/oracle/dense_ref.hpp"

#include <string>

#include "hipkernels/error.hpp"

namespace hipkernels::oracle {

namespace {

void check_range(std::span<const index_t> indices, index_t bound,
                 const char* axis) {
  for (const index_t idx : indices) {
    if (idx < 0 || idx >= bound) {
      throw Error(Errc::index_out_of_bounds,
                  std::string(axis) + " index " + std::to_string(idx) +
                      " outside [0," + std::to_string(bound) + ")");
    }
  }
}

void check_distinct(std::span<const index_t> indices, const char* axis) {
  // Quadratic by design: no sorting machinery shared with the library.
  for (std::size_t i = 0; i < indices.size(); ++i) {
    for (std::size_t j = i + 1; j < indices.size(); ++j) {
      if (indices[i] == indices[j]) {
        throw Error(Errc::duplicate_index,
                    std::string(axis) + " index " +
                        std::to_string(indices[i]) + " selected twice");
      }
    }
  }
}

void check_permutation(std::span<const index_t> perm, index_t length,
                       const char* axis) {
  if (static_cast<index_t>(perm.size()) != length) {
    throw Error(Errc::not_a_permutation,
                std::string(axis) + " permutation has length " +
                    std::to_string(perm.size()) + ", expected " +
                    std::to_string(length));
  }
  std::vector<bool> seen(static_cast<std::size_t>(length), false);
  for (const index_t v : perm) {
    if (v < 0 || v >= length) {
      throw Error(Errc::not_a_permutation,
                  std::string(axis) + " value " + std::to_string(v) +
                      " outside [0," + std::to_string(length) + ")");
    }
    if (seen[static_cast<std::size_t>(v)]) {
      throw Error(Errc::not_a_permutation, std::string(axis) + " value " +
                                               std::to_string(v) +
                                               " appears twice");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
}

Value combine(AddOp op, Value existing, Value incoming) {
  switch (op) {
    case AddOp::arithmetic_sum:
      return existing + incoming;
    case AddOp::select_second:
      return incoming;
    case AddOp::logical_or:
      return (existing != 0.0 || incoming != 0.0) ? 1.0 : 0.0;
  }
  throw Error(Errc::invalid_argument, "unknown AddOp");
}

}  // namespace

DenseRef::DenseRef(index_t m_, index_t n_) : m(m_), n(n_) {
  if (m < 0 || n < 0) {
    throw Error(Errc::invalid_argument, "dimensions must be >= 0");
  }
  cells.resize(static_cast<std::size_t>(m * n));
}

std::optional<Value>& DenseRef::at(index_t i, index_t j) {
  return cells[static_cast<std::size_t>(i * n + j)];
}

const std::optional<Value>& DenseRef::at(index_t i, index_t j) const {
  return cells[static_cast<std::size_t>(i * n + j)];
}

DenseRef DenseRef::from_coo(const CooMatrix& coo) {
  DenseRef ref(coo.nrows, coo.ncols);
  for (const CooEntry& e : coo.entries) {
    if (e.row < 0 || e.row >= coo.nrows || e.col < 0 || e.col >= coo.ncols) {
      throw Error(Errc::index_out_of_bounds,
                  "entry (" + std::to_string(e.row) + ", " +
                      std::to_string(e.col) + ") outside " +
                      std::to_string(coo.nrows) + "x" +
                      std::to_string(coo.ncols));
    }
    std::optional<Value>& cell = ref.at(e.row, e.col);
    if (cell.has_value()) {
      throw Error(Errc::duplicate_entry,
                  "entry (" + std::to_string(e.row) + ", " +
                      std::to_string(e.col) + ") is stored twice");
    }
    cell = e.val;
  }
  return ref;
}

CooMatrix DenseRef::to_coo() const {
  CooMatrix coo;
  coo.nrows = m;
  coo.ncols = n;
  for (index_t j = 0; j < n; ++j) {
    for (index_t i = 0; i < m; ++i) {
      if (at(i, j).has_value()) {
        coo.entries.push_back({i, j, *at(i, j)});
      }
    }
  }
  return coo;
}

DenseRef oracle_permute(const DenseRef& a, std::span<const index_t> pvec,
                        std::span<const index_t> qvec) {
  check_permutation(pvec, a.m, "row");
  check_permutation(qvec, a.n, "column");
  DenseRef out(a.m, a.n);
  for (index_t i = 0; i < a.m; ++i) {
    for (index_t j = 0; j < a.n; ++j) {
      out.at(i, j) = a.at(pvec[static_cast<std::size_t>(i)],
                          qvec[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

DenseRef oracle_extract(const DenseRef& a, std::span<const index_t> rows,
                        std::span<const index_t> cols) {
  check_range(rows, a.m, "row");
  check_range(cols, a.n, "column");
  DenseRef out(static_cast<index_t>(rows.size()),
               static_cast<index_t>(cols.size()));
  for (index_t i = 0; i < out.m; ++i) {
    for (index_t j = 0; j < out.n; ++j) {
      out.at(i, j) = a.at(rows[static_cast<std::size_t>(i)],
                          cols[static_cast<std::size_t>(j)]);
    }
  }
  return out;
}

DenseRef oracle_assign(const DenseRef& a, const DenseRef& b,
                       std::span<const index_t> rows,
                       std::span<const index_t> cols, AddOp op) {
  if (b.m != static_cast<index_t>(rows.size()) ||
      b.n != static_cast<index_t>(cols.size())) {
    throw Error(Errc::dimension_mismatch,
                "the assigned matrix must measure |rows| x |cols|");
  }
  check_range(rows, a.m, "row");
  check_range(cols, a.n, "column");
  check_distinct(rows, "row");
  check_distinct(cols, "column");
  DenseRef out = a;
  for (index_t i = 0; i < b.m; ++i) {
    for (index_t j = 0; j < b.n; ++j) {
      if (!b.at(i, j).has_value()) continue;
      std::optional<Value>& cell = out.at(rows[static_cast<std::size_t>(i)],
                                          cols[static_cast<std::size_t>(j)]);
      cell = cell.has_value() ? combine(op, *cell, *b.at(i, j)) : *b.at(i, j);
    }
  }
  return out;
}

}  // namespace hipkernels::oracle
