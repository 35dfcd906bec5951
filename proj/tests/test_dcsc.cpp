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

#include <algorithm>
#include <vector>

#include "doctest.h"
#include "hipkernels/dcsc.hpp"
#include "hipkernels/error.hpp"
#include "support/generators.hpp"

using namespace hipkernels;

namespace {

std::vector<Triple> sorted_triples_of(const CooMatrix& coo) {
  std::vector<Triple> triples;
  triples.reserve(coo.entries.size());
  for (const CooEntry& e : coo.entries) {
    triples.push_back({e.row, e.col, e.val});
  }
  std::sort(triples.begin(), triples.end(),
            [](const Triple& a, const Triple& b) {
              return a.lcol != b.lcol ? a.lcol < b.lcol : a.lrow < b.lrow;
            });
  return triples;
}

}  // namespace

TEST_CASE("compressing sorted triples fills the four arrays") {
  const std::vector<Triple> triples = {{0, 1, 5.0}, {2, 1, 7.0}, {2, 3, 8.0}};
  const LocalDcsc block = LocalDcsc::from_sorted_triples(triples, 4, 4);

  CHECK(block.nrows() == 4);
  CHECK(block.ncols() == 4);
  CHECK(block.nnz() == 3);
  CHECK(block.nzc() == 2);
  CHECK(std::vector<index_t>(block.jc().begin(), block.jc().end()) ==
        std::vector<index_t>{1, 3});
  CHECK(std::vector<index_t>(block.cp().begin(), block.cp().end()) ==
        std::vector<index_t>{0, 2, 3});
  CHECK(std::vector<index_t>(block.ir().begin(), block.ir().end()) ==
        std::vector<index_t>{0, 2, 2});
  CHECK(std::vector<Value>(block.num().begin(), block.num().end()) ==
        std::vector<Value>{5.0, 7.0, 8.0});
}

TEST_CASE("an empty block has no listed columns") {
  const LocalDcsc block = LocalDcsc::from_sorted_triples({}, 4, 4);

  CHECK(block.nnz() == 0);
  CHECK(block.nzc() == 0);
  CHECK(block.jc().empty());
  CHECK(std::vector<index_t>(block.cp().begin(), block.cp().end()) ==
        std::vector<index_t>{0});
  CHECK(block.ir().empty());
  CHECK(block.num().empty());
  CHECK(block.to_triples().empty());
}

TEST_CASE("iteration inverts construction") {
  const std::vector<Triple> triples = {{0, 1, 5.0}, {2, 1, 7.0}, {2, 3, 8.0}};
  const LocalDcsc block = LocalDcsc::from_sorted_triples(triples, 4, 4);
  CHECK(block.to_triples() == triples);

  std::vector<Triple> visited;
  block.for_each([&](index_t lrow, index_t lcol, Value val) {
    visited.push_back({lrow, lcol, val});
  });
  CHECK(visited == triples);
}

TEST_CASE("round trip holds on random duplicate-free inputs") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const CooMatrix coo =
        testing::random_coo(11, 9, 20 + static_cast<index_t>(seed) * 7, seed);
    const std::vector<Triple> triples = sorted_triples_of(coo);
    const LocalDcsc block = LocalDcsc::from_sorted_triples(triples, 11, 9);

    CHECK(block.nnz() == static_cast<index_t>(triples.size()));
    CHECK(block.to_triples() == triples);
    // The three nonzero counts agree by construction.
    CHECK(block.cp().back() == block.nnz());
    CHECK(static_cast<index_t>(block.ir().size()) == block.nnz());
    CHECK(static_cast<index_t>(block.num().size()) == block.nnz());
  }
}

TEST_CASE("stored zeros survive as structural nonzeros") {
  const std::vector<Triple> triples = {{1, 0, 0.0}, {3, 2, -0.0}};
  const LocalDcsc block = LocalDcsc::from_sorted_triples(triples, 4, 4);
  CHECK(block.nnz() == 2);
  CHECK(block.to_triples() == triples);
}

TEST_CASE("unsorted columns are rejected") {
  const std::vector<Triple> triples = {{0, 3, 1.0}, {0, 1, 2.0}};
  CHECK_THROWS_WITH_AS(LocalDcsc::from_sorted_triples(triples, 4, 4),
                       doctest::Contains("UnsortedInput"), Error);
}

TEST_CASE("unsorted rows within a column are rejected") {
  const std::vector<Triple> triples = {{2, 1, 1.0}, {0, 1, 2.0}};
  try {
    LocalDcsc::from_sorted_triples(triples, 4, 4);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsorted_input);
  }
}

TEST_CASE("duplicate coordinates are rejected") {
  const std::vector<Triple> triples = {{2, 1, 1.0}, {2, 1, 2.0}};
  try {
    LocalDcsc::from_sorted_triples(triples, 4, 4);
    FAIL("expected an exception");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_coordinate);
  }
}

TEST_CASE("out-of-bounds coordinates are rejected") {
  const auto code_of = [](const std::vector<Triple>& t) {
    try {
      LocalDcsc::from_sorted_triples(t, 4, 4);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::invalid_argument;
  };
  CHECK(code_of({{4, 0, 1.0}}) == Errc::index_out_of_bounds);
  CHECK(code_of({{0, 4, 1.0}}) == Errc::index_out_of_bounds);
  CHECK(code_of({{-1, 0, 1.0}}) == Errc::index_out_of_bounds);
  CHECK(code_of({{0, -1, 1.0}}) == Errc::index_out_of_bounds);
}

TEST_CASE("column lookup distinguishes stored and absent columns") {
  const std::vector<Triple> triples = {{0, 1, 5.0}, {2, 1, 7.0}, {2, 3, 8.0}};
  const LocalDcsc block = LocalDcsc::from_sorted_triples(triples, 4, 4);
  CHECK(block.find_column(1) == 0);
  CHECK(block.find_column(3) == 1);
  CHECK(block.find_column(0) == -1);
  CHECK(block.find_column(2) == -1);
}

TEST_CASE("combiners implement their arithmetic") {
  CHECK(apply_addop(AddOp::select_second, 3.0, 7.0) == 7.0);
  CHECK(apply_addop(AddOp::arithmetic_sum, 0.0, 0.0) == 0.0);
  CHECK(apply_addop(AddOp::arithmetic_sum, 3.0, 7.0) == 10.0);
  CHECK(apply_addop(AddOp::logical_or, 2.5, -1.0) == 1.0);
  CHECK(apply_addop(AddOp::logical_or, 0.0, 0.0) == 0.0);
  CHECK(apply_addop(AddOp::logical_or, 0.0, 5.0) == 1.0);
}

TEST_CASE("combiners are deterministic") {
  testing::TestRng rng(99);
  for (int i = 0; i < 100; ++i) {
    const Value a = rng.value();
    const Value b = rng.value();
    for (AddOp op : {AddOp::arithmetic_sum, AddOp::select_second,
                     AddOp::logical_or}) {
      CHECK(apply_addop(op, a, b) == apply_addop(op, a, b));
    }
  }
}
