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

#include <numeric>
#include <vector>

#include "doctest.h"
#include "hipkernels/error.hpp"
#include "hipkernels/io/random_perm.hpp"
#include "hipkernels/oracle/dense_ref.hpp"
#include "support/generators.hpp"

using namespace hipkernels;
using oracle::DenseRef;

namespace {

std::vector<index_t> identity_map(index_t n) {
  std::vector<index_t> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), index_t{0});
  return v;
}

}  // namespace

TEST_CASE("dense reference round trips through coordinates") {
  const CooMatrix coo = testing::random_coo(7, 9, 25, 51);
  const DenseRef ref = DenseRef::from_coo(coo);
  CHECK(ref.m == 7);
  CHECK(ref.n == 9);
  const CooMatrix back = ref.to_coo();
  CHECK(testing::canonical_entries(back) == testing::canonical_entries(coo));
  CHECK(DenseRef::from_coo(back) == ref);
}

TEST_CASE("dense reference distinguishes stored zero from absence") {
  CooMatrix coo;
  coo.nrows = 2;
  coo.ncols = 2;
  coo.entries = {{0, 0, 0.0}};
  const DenseRef ref = DenseRef::from_coo(coo);
  CHECK(ref.at(0, 0).has_value());
  CHECK(*ref.at(0, 0) == 0.0);
  CHECK(!ref.at(1, 1).has_value());
  CHECK(ref.to_coo().nnz() == 1);
}

TEST_CASE("dense reference rejects malformed coordinate lists") {
  CooMatrix out_of_range;
  out_of_range.nrows = 2;
  out_of_range.ncols = 2;
  out_of_range.entries = {{2, 0, 1.0}};
  try {
    DenseRef::from_coo(out_of_range);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::index_out_of_bounds);
  }

  CooMatrix duplicated;
  duplicated.nrows = 2;
  duplicated.ncols = 2;
  duplicated.entries = {{1, 1, 1.0}, {1, 1, 2.0}};
  try {
    DenseRef::from_coo(duplicated);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_entry);
  }
}

TEST_CASE("identity vectors leave the reference matrix unchanged") {
  const DenseRef a = DenseRef::from_coo(testing::random_coo(6, 6, 14, 3));
  const auto id = identity_map(6);
  CHECK(oracle::oracle_permute(a, id, id) == a);
  CHECK(oracle::oracle_extract(a, id, id) == a);
}

TEST_CASE("reference relocation follows its index vectors") {
  // 1x1 case: the single cell follows the only possible mapping.
  CooMatrix tiny;
  tiny.nrows = 1;
  tiny.ncols = 1;
  tiny.entries = {{0, 0, 3.5}};
  const DenseRef a = DenseRef::from_coo(tiny);
  const std::vector<index_t> zero = {0};
  CHECK(oracle::oracle_permute(a, zero, zero) == a);

  // Reversal: result[i,j] = A[m-1-i, n-1-j].
  const DenseRef b = DenseRef::from_coo(testing::random_coo(4, 5, 9, 8));
  std::vector<index_t> rrev = {3, 2, 1, 0};
  std::vector<index_t> crev = {4, 3, 2, 1, 0};
  const DenseRef rev = oracle::oracle_permute(b, rrev, crev);
  for (index_t i = 0; i < 4; ++i) {
    for (index_t j = 0; j < 5; ++j) {
      CHECK(rev.at(i, j) == b.at(3 - i, 4 - j));
    }
  }
}

TEST_CASE("relocating forward then backward restores the reference matrix") {
  const DenseRef a = DenseRef::from_coo(testing::random_coo(16, 16, 60, 13));
  const std::vector<index_t> pvec = random_permutation(16, 5);
  const std::vector<index_t> qvec = random_permutation(16, 6);

  std::vector<index_t> pinv(16), qinv(16);
  for (index_t i = 0; i < 16; ++i) {
    pinv[static_cast<std::size_t>(pvec[static_cast<std::size_t>(i)])] = i;
    qinv[static_cast<std::size_t>(qvec[static_cast<std::size_t>(i)])] = i;
  }
  const DenseRef once = oracle::oracle_permute(a, pvec, qvec);
  const DenseRef back = oracle::oracle_permute(once, pinv, qinv);
  CHECK(back == a);
}

TEST_CASE("non-bijective index vectors are rejected for relocation") {
  const DenseRef a = DenseRef::from_coo(testing::random_coo(4, 4, 6, 2));
  const auto id = identity_map(4);
  for (const std::vector<index_t>& bad :
       {std::vector<index_t>{0, 1, 2},        // wrong length
        std::vector<index_t>{0, 1, 2, 2},     // repeated target
        std::vector<index_t>{0, 1, 2, 4},     // out of range
        std::vector<index_t>{0, 1, 2, -1}}) {  // negative
    try {
      oracle::oracle_permute(a, bad, id);
      FAIL("expected an exception");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::not_a_permutation);
    }
  }
}

TEST_CASE("reference selection keeps the requested cross product") {
  const DenseRef a = DenseRef::from_coo(testing::random_coo(8, 8, 30, 4));
  const std::vector<index_t> rows = {6, 1};
  const std::vector<index_t> cols = {0, 7, 3};
  const DenseRef sub = oracle::oracle_extract(a, rows, cols);
  CHECK(sub.m == 2);
  CHECK(sub.n == 3);
  for (index_t i = 0; i < 2; ++i) {
    for (index_t j = 0; j < 3; ++j) {
      CHECK(sub.at(i, j) == a.at(rows[static_cast<std::size_t>(i)],
                                 cols[static_cast<std::size_t>(j)]));
    }
  }
}

TEST_CASE("reference selection rejects out-of-range indices") {
  const DenseRef a = DenseRef::from_coo(testing::random_coo(4, 4, 6, 9));
  const std::vector<index_t> rows = {0, 4};
  const std::vector<index_t> cols = {0};
  try {
    oracle::oracle_extract(a, rows, cols);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::index_out_of_bounds);
  }
}

TEST_CASE("reference assignment writes and combines cells") {
  // A holds 7 at (1,3); B holds 2 at its only cell targeting (1,3).
  CooMatrix ca;
  ca.nrows = 4;
  ca.ncols = 4;
  ca.entries = {{1, 3, 7.0}, {0, 0, 1.0}};
  CooMatrix cb;
  cb.nrows = 1;
  cb.ncols = 1;
  cb.entries = {{0, 0, 2.0}};
  const DenseRef a = DenseRef::from_coo(ca);
  const DenseRef b = DenseRef::from_coo(cb);
  const std::vector<index_t> row1 = {1}, col3 = {3};
  const std::vector<index_t> row2 = {2}, col2 = {2};

  const DenseRef summed =
      oracle::oracle_assign(a, b, row1, col3, AddOp::arithmetic_sum);
  CHECK(*summed.at(1, 3) == 9.0);
  CHECK(*summed.at(0, 0) == 1.0);

  const DenseRef replaced =
      oracle::oracle_assign(a, b, row1, col3, AddOp::select_second);
  CHECK(*replaced.at(1, 3) == 2.0);

  // Writing into an empty cell takes the incoming value no matter the op.
  const DenseRef inserted =
      oracle::oracle_assign(a, b, row2, col2, AddOp::arithmetic_sum);
  CHECK(*inserted.at(2, 2) == 2.0);
  CHECK(*inserted.at(1, 3) == 7.0);
}

TEST_CASE("reference assignment leaves untargeted structural zeros absent") {
  CooMatrix ca;
  ca.nrows = 3;
  ca.ncols = 3;
  ca.entries = {{0, 0, 5.0}};
  CooMatrix cb;
  cb.nrows = 2;
  cb.ncols = 2;
  cb.entries = {{0, 1, 4.0}};
  const std::vector<index_t> targets = {1, 2};
  const DenseRef out = oracle::oracle_assign(
      DenseRef::from_coo(ca), DenseRef::from_coo(cb), targets, targets,
      AddOp::arithmetic_sum);
  // B's absent cells assign nothing: (1,1), (2,1), (2,2) stay empty.
  CHECK(*out.at(1, 2) == 4.0);
  CHECK(!out.at(1, 1).has_value());
  CHECK(!out.at(2, 1).has_value());
  CHECK(!out.at(2, 2).has_value());
  CHECK(*out.at(0, 0) == 5.0);
}

TEST_CASE("reference assignment validates selections and dimensions") {
  const DenseRef a = DenseRef::from_coo(testing::random_coo(5, 5, 8, 30));
  const DenseRef b = DenseRef::from_coo(testing::random_coo(2, 2, 2, 31));

  const auto code_of = [&](std::span<const index_t> rows,
                           std::span<const index_t> cols) {
    try {
      oracle::oracle_assign(a, b, rows, cols, AddOp::select_second);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::invalid_argument;
  };
  const std::vector<index_t> two = {0, 1};
  CHECK(code_of(std::vector<index_t>{0, 5}, two) == Errc::index_out_of_bounds);
  CHECK(code_of(std::vector<index_t>{1, 1}, two) == Errc::duplicate_index);
  CHECK(code_of(two, std::vector<index_t>{2, 2}) == Errc::duplicate_index);
  // B sized 2x2 but selections sized 2x3.
  CHECK(code_of(two, std::vector<index_t>{0, 1, 2}) ==
        Errc::dimension_mismatch);
}
