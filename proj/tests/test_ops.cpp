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
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "hipkernels/error.hpp"
#include "hipkernels/io/random_perm.hpp"
#include "hipkernels/metrics.hpp"
#include "hipkernels/ops.hpp"
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

template <class Fn>
std::optional<Errc> code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;  // comparison with any code then fails the check
}

}  // namespace

TEST_CASE("inverting a dense index vector satisfies w[v[i]] = i") {
  const ProcGrid grid(1);
  const DistVector v = testing::dist_vector({2, 0, 1}, grid);
  const DistVector w = swap_index_value(v);
  CHECK(w.to_global() == std::vector<index_t>{1, 2, 0});
}

TEST_CASE("dense inversion distributes across ranks and orientations") {
  const ProcGrid grid(4);
  const std::vector<index_t> perm = random_permutation(19, 3);
  for (VectorOrientation orientation :
       {VectorOrientation::by_grid_row, VectorOrientation::by_grid_col}) {
    const DistVector v = testing::dist_vector(perm, grid, orientation);
    const DistVector w = swap_index_value(v, orientation);
    CHECK(w.layout.orientation() == orientation);
    const std::vector<index_t> inverse = w.to_global();
    for (index_t i = 0; i < 19; ++i) {
      CHECK(inverse[static_cast<std::size_t>(
                perm[static_cast<std::size_t>(i)])] == i);
    }
  }
}

TEST_CASE("inversion rejects vectors that are not bijections") {
  const ProcGrid grid(4);
  CHECK(code_of([&] {
          swap_index_value(testing::dist_vector({0, 1, 2, 2, 4, 5}, grid));
        }) == Errc::not_a_permutation);
  CHECK(code_of([&] {
          swap_index_value(testing::dist_vector({0, 1, 2, 9, 4, 5}, grid));
        }) == Errc::not_a_permutation);
  CHECK(code_of([&] {
          swap_index_value(testing::dist_vector({0, 1, 2, -1, 4, 5}, grid));
        }) == Errc::not_a_permutation);
}

TEST_CASE("sparse inversion swaps pair roles and sorts by position") {
  const ProcGrid grid(4);
  const VectorLayout in_layout(grid, 10);
  const VectorLayout out_layout(grid, 12);
  // Positions 2, 7, 9 select targets 11, 0, 4.
  const std::vector<SparsePair> pairs = {{2, 11}, {7, 0}, {9, 4}};
  const DistSparseVector v = DistSparseVector::from_pairs(pairs, in_layout);

  const DistSparseVector w = sparse_swap_index_value(v, out_layout);
  CHECK(w.to_pairs() ==
        std::vector<SparsePair>{{0, 7}, {4, 9}, {11, 2}});
}

TEST_CASE("sparse inversion applied twice returns to the start") {
  const ProcGrid grid(4);
  const VectorLayout small(grid, 30);
  const VectorLayout large(grid, 40);
  const auto targets = testing::random_selection(40, 12, 17);
  std::vector<SparsePair> pairs;
  for (index_t i = 0; i < 12; ++i) {
    pairs.push_back({i * 2, targets[static_cast<std::size_t>(i)]});
  }
  const DistSparseVector v = DistSparseVector::from_pairs(pairs, small);
  const DistSparseVector once = sparse_swap_index_value(v, large);
  const DistSparseVector twice = sparse_swap_index_value(once, small);

  std::vector<SparsePair> expected = pairs;
  std::sort(expected.begin(), expected.end(),
            [](const SparsePair& a, const SparsePair& b) {
              return a.index < b.index;
            });
  CHECK(twice.to_pairs() == expected);
}

TEST_CASE("sparse inversion rejects colliding or out-of-range targets") {
  const ProcGrid grid(1);
  const VectorLayout in_layout(grid, 10);
  const VectorLayout out_layout(grid, 5);

  const DistSparseVector colliding = DistSparseVector::from_pairs(
      std::vector<SparsePair>{{1, 3}, {4, 3}}, in_layout);
  CHECK(code_of([&] { sparse_swap_index_value(colliding, out_layout); }) ==
        Errc::duplicate_target);

  const DistSparseVector outside = DistSparseVector::from_pairs(
      std::vector<SparsePair>{{1, 5}}, in_layout);
  CHECK(code_of([&] { sparse_swap_index_value(outside, out_layout); }) ==
        Errc::index_out_of_bounds);
}

TEST_CASE("band gathers hand every rank the slice its block needs") {
  const ProcGrid grid(4);
  const std::vector<index_t> rowvals = testing::random_selection(10, 10, 21);
  const std::vector<index_t> colvals = testing::random_selection(8, 8, 22);
  const DistVector rowvec =
      testing::dist_vector(rowvals, grid, VectorOrientation::by_grid_row);
  const DistVector colvec =
      testing::dist_vector(colvals, grid, VectorOrientation::by_grid_col);
  const MatrixLayout layout(grid, 10, 8);

  auto maps = run_ranks(4, [&](RankContext& ctx) {
    return gather_row_col_maps(ctx, rowvec, colvec);
  });

  for (int rank = 0; rank < 4; ++rank) {
    const GridCoord at = grid.coord_of(rank);
    const BlockRange rows = layout.row_block(at.r);
    const BlockRange cols = layout.col_block(at.c);
    const std::vector<index_t> row_expect(
        rowvals.begin() + rows.begin, rowvals.begin() + rows.end);
    const std::vector<index_t> col_expect(
        colvals.begin() + cols.begin, colvals.begin() + cols.end);
    CHECK(maps[static_cast<std::size_t>(rank)].first == row_expect);
    CHECK(maps[static_cast<std::size_t>(rank)].second == col_expect);
  }
}

TEST_CASE("band gathers insist on matching orientations") {
  const ProcGrid grid(4);
  const DistVector rowvec = testing::dist_vector(
      identity_map(8), grid, VectorOrientation::by_grid_row);
  const DistVector wrong = testing::dist_vector(
      identity_map(8), grid, VectorOrientation::by_grid_row);
  CHECK(code_of([&] {
          run_ranks(4, [&](RankContext& ctx) {
            return gather_row_col_maps(ctx, rowvec, wrong);
          });
        }) == Errc::invalid_argument);
}

TEST_CASE("identity vectors relocate nothing") {
  for (int p : {1, 4}) {
    const ProcGrid grid(p);
    const CooMatrix coo = testing::random_coo(10, 12, 40, 5);
    const DistMatrix a = distribute(coo, grid);
    const DistVector pvec = testing::dist_vector(identity_map(10), grid);
    const DistVector qvec = testing::dist_vector(identity_map(12), grid);
    const DistMatrix out = permute(a, pvec, qvec);
    CHECK(out.blocks == a.blocks);
  }
}

TEST_CASE("a relocated entry lands in the right block") {
  // Symmetric index vector that swaps rows/columns 0<->1 and 4<->6: the
  // entry at (0,4) must re-emerge at (1,6), held by rank 1 at local (1,2).
  CooMatrix coo;
  coo.nrows = 8;
  coo.ncols = 8;
  coo.entries = {{0, 4, 9.5}};
  const ProcGrid grid(4);
  const DistMatrix a = distribute(coo, grid);
  const std::vector<index_t> v = {1, 0, 2, 3, 6, 5, 4, 7};
  const DistVector pvec = testing::dist_vector(v, grid);
  const DistVector qvec = testing::dist_vector(v, grid);

  const DistMatrix out = permute(a, pvec, qvec);
  CHECK(out.blocks[0].nnz() == 0);
  CHECK(out.blocks[1].to_triples() == std::vector<Triple>{{1, 2, 9.5}});
  CHECK(out.blocks[2].nnz() == 0);
  CHECK(out.blocks[3].nnz() == 0);

  const CooMatrix back = collect(out);
  REQUIRE(back.nnz() == 1);
  CHECK(back.entries[0] == CooEntry{1, 6, 9.5});
}

TEST_CASE("relocation agrees with the dense reference") {
  for (int p : {1, 4, 9}) {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const ProcGrid grid(p);
      const CooMatrix coo = testing::random_coo(17, 13, 60, seed + 40);
      const DistMatrix a = distribute(coo, grid);
      const std::vector<index_t> pv = random_permutation(17, seed + 1);
      const std::vector<index_t> qv = random_permutation(13, seed + 2);

      const DistMatrix out = permute(a, testing::dist_vector(pv, grid),
                                     testing::dist_vector(qv, grid));
      const DenseRef expected =
          oracle::oracle_permute(DenseRef::from_coo(coo), pv, qv);
      CHECK(collect(out) == expected.to_coo());
      CHECK(out.total_nnz() == coo.nnz());
    }
  }
}

TEST_CASE("relocation results are identical for any thread count") {
  const ProcGrid grid(4);
  const CooMatrix coo = testing::random_coo(20, 20, 90, 61);
  const DistMatrix a = distribute(coo, grid);
  const DistVector pvec =
      testing::dist_vector(random_permutation(20, 9), grid);
  const DistVector qvec =
      testing::dist_vector(random_permutation(20, 10), grid);

  OpOptions one;
  one.nthreads = 1;
  const DistMatrix base = permute(a, pvec, qvec, one);
  for (int nthreads : {2, 4, 8}) {
    OpOptions many;
    many.nthreads = nthreads;
    CHECK(permute(a, pvec, qvec, many).blocks == base.blocks);
  }
}

TEST_CASE("applying a vector and its inverse round trips the matrix") {
  const ProcGrid grid(4);
  const CooMatrix coo = testing::random_coo(14, 14, 50, 71);
  const DistMatrix a = distribute(coo, grid);
  const std::vector<index_t> pv = random_permutation(14, 31);
  const std::vector<index_t> qv = random_permutation(14, 32);
  std::vector<index_t> pinv(14), qinv(14);
  for (index_t i = 0; i < 14; ++i) {
    pinv[static_cast<std::size_t>(pv[static_cast<std::size_t>(i)])] = i;
    qinv[static_cast<std::size_t>(qv[static_cast<std::size_t>(i)])] = i;
  }

  const DistMatrix once = permute(a, testing::dist_vector(pv, grid),
                                  testing::dist_vector(qv, grid));
  const DistMatrix back = permute(once, testing::dist_vector(pinv, grid),
                                  testing::dist_vector(qinv, grid));
  CHECK(back.blocks == a.blocks);
}

TEST_CASE("symmetric relocation preserves structural symmetry") {
  const ProcGrid grid(4);
  const CooMatrix coo = testing::random_symmetric_pattern(12, 30, 81);
  const DistMatrix a = distribute(coo, grid);
  const std::vector<index_t> v = random_permutation(12, 15);
  const DistMatrix out = permute(a, testing::dist_vector(v, grid),
                                 testing::dist_vector(v, grid));

  std::set<std::pair<index_t, index_t>> pattern;
  for (const CooEntry& e : collect(out).entries) {
    pattern.insert({e.row, e.col});
  }
  for (const auto& [i, j] : pattern) {
    CHECK(pattern.count({j, i}) == 1);
  }
}

TEST_CASE("relocation validates vectors before moving data") {
  const ProcGrid grid(4);
  const CooMatrix coo = testing::random_coo(8, 8, 12, 91);
  const DistMatrix a = distribute(coo, grid);
  const DistVector good = testing::dist_vector(identity_map(8), grid);

  CHECK(code_of([&] {
          permute(a, testing::dist_vector({0, 1, 1, 3, 4, 5, 6, 7}, grid),
                  good);
        }) == Errc::not_a_permutation);
  CHECK(code_of([&] {
          permute(a, good, testing::dist_vector(identity_map(7), grid));
        }) == Errc::dimension_mismatch);
  CHECK(code_of([&] {
          permute(a, good, testing::dist_vector(identity_map(8),
                                                ProcGrid(1)));
        }) == Errc::invalid_argument);
  CHECK(code_of([&] {
          OpOptions bad;
          bad.nthreads = 0;
          permute(a, good, good, bad);
        }) == Errc::invalid_argument);
}

TEST_CASE("relocation metrics account for every exchanged triple") {
  const ProcGrid grid(4);
  const CooMatrix coo = testing::random_coo(16, 16, 70, 33);
  const DistMatrix a = distribute(coo, grid);
  PhaseMetrics metrics;
  OpOptions options;
  options.metrics = &metrics;
  const DistMatrix out =
      permute(a, testing::dist_vector(random_permutation(16, 1), grid),
              testing::dist_vector(random_permutation(16, 2), grid), options);

  CHECK(metrics.triples_exchanged == coo.nnz());
  REQUIRE(metrics.sent_per_rank.size() == 4);
  REQUIRE(metrics.recv_per_rank.size() == 4);
  const index_t sent = std::accumulate(metrics.sent_per_rank.begin(),
                                       metrics.sent_per_rank.end(), index_t{0});
  const index_t received =
      std::accumulate(metrics.recv_per_rank.begin(),
                      metrics.recv_per_rank.end(), index_t{0});
  CHECK(sent == received);
  CHECK(sent == metrics.triples_exchanged);
  for (int rank = 0; rank < 4; ++rank) {
    CHECK(metrics.recv_per_rank[static_cast<std::size_t>(rank)] ==
          out.blocks[static_cast<std::size_t>(rank)].nnz());
  }
  CHECK(metrics.gather_s >= 0.0);
  CHECK(metrics.local_s >= 0.0);
  CHECK(metrics.exchange_s >= 0.0);
  CHECK(metrics.build_s >= 0.0);
  CHECK(metrics.add_s == 0.0);
  CHECK(metrics.imbalance_before >= 1.0);
  CHECK(metrics.imbalance_after >= 1.0);
}

TEST_CASE("selection agrees with the dense reference") {
  for (int p : {1, 4}) {
    const ProcGrid grid(p);
    const CooMatrix coo = testing::random_coo(15, 18, 70, 55);
    const DistMatrix a = distribute(coo, grid);
    const std::vector<index_t> rows = testing::random_selection(15, 6, 7);
    const std::vector<index_t> cols = testing::random_selection(18, 9, 8);

    const DistMatrix sub = extract(a, testing::dist_vector(rows, grid),
                                   testing::dist_vector(cols, grid));
    CHECK(sub.nrows() == 6);
    CHECK(sub.ncols() == 9);
    const DenseRef expected =
        oracle::oracle_extract(DenseRef::from_coo(coo), rows, cols);
    CHECK(collect(sub) == expected.to_coo());
  }
}

TEST_CASE("selecting every index in order is the identity") {
  const ProcGrid grid(4);
  const CooMatrix coo = testing::random_coo(12, 10, 35, 59);
  const DistMatrix a = distribute(coo, grid);
  const DistMatrix sub =
      extract(a, testing::dist_vector(identity_map(12), grid),
              testing::dist_vector(identity_map(10), grid));
  CHECK(sub.blocks == a.blocks);
}

TEST_CASE("selecting with full-length shuffles equals relocation") {
  const ProcGrid grid(4);
  const CooMatrix coo = testing::random_coo(13, 13, 45, 67);
  const DistMatrix a = distribute(coo, grid);
  const std::vector<index_t> pv = random_permutation(13, 4);
  const std::vector<index_t> qv = random_permutation(13, 5);
  const DistVector pvec = testing::dist_vector(pv, grid);
  const DistVector qvec = testing::dist_vector(qv, grid);

  const DistMatrix selected = extract(a, pvec, qvec);
  const DistMatrix relocated = permute(a, pvec, qvec);
  CHECK(selected.blocks == relocated.blocks);
}

TEST_CASE("an empty selection produces an empty matrix") {
  const ProcGrid grid(4);
  const CooMatrix coo = testing::random_coo(8, 8, 16, 72);
  const DistMatrix a = distribute(coo, grid);
  const DistMatrix sub = extract(a, testing::dist_vector({}, grid),
                                 testing::dist_vector({2, 5}, grid));
  CHECK(sub.nrows() == 0);
  CHECK(sub.ncols() == 2);
  CHECK(sub.total_nnz() == 0);
}

TEST_CASE("selection rejects repeated or out-of-range indices") {
  const ProcGrid grid(4);
  const CooMatrix coo = testing::random_coo(8, 8, 16, 73);
  const DistMatrix a = distribute(coo, grid);
  const DistVector good = testing::dist_vector({0, 3}, grid);

  CHECK(code_of([&] {
          extract(a, testing::dist_vector({5, 5}, grid), good);
        }) == Errc::duplicate_index);
  CHECK(code_of([&] {
          extract(a, good, testing::dist_vector({0, 8}, grid));
        }) == Errc::index_out_of_bounds);
  CHECK(code_of([&] {
          extract(a, good, testing::dist_vector({0, -2}, grid));
        }) == Errc::index_out_of_bounds);
}

TEST_CASE("writing a one-cell block replaces the targeted entry") {
  // The 1x1 block holding 7 goes to row 1, column 3 of the target.
  CooMatrix ca;
  ca.nrows = 4;
  ca.ncols = 6;
  ca.entries = {{1, 3, 2.0}, {0, 0, 1.0}};
  CooMatrix cb;
  cb.nrows = 1;
  cb.ncols = 1;
  cb.entries = {{0, 0, 7.0}};

  for (int p : {1, 4}) {
    const ProcGrid grid(p);
    const DistMatrix a = distribute(ca, grid);
    const DistMatrix b = distribute(cb, grid);
    const DistMatrix out =
        assign(a, b, testing::dist_vector({1}, grid),
               testing::dist_vector({3}, grid), AddOp::select_second);

    const CooMatrix result = collect(out);
    REQUIRE(result.nnz() == 2);
    CHECK(testing::canonical_entries(result) ==
          std::vector<CooEntry>{{0, 0, 1.0}, {1, 3, 7.0}});
  }
}

TEST_CASE("assignment agrees with the dense reference") {
  for (int p : {1, 4}) {
    for (AddOp op : {AddOp::arithmetic_sum, AddOp::select_second,
                     AddOp::logical_or}) {
      const ProcGrid grid(p);
      const CooMatrix ca = testing::random_coo(14, 16, 60, 83);
      const CooMatrix cb = testing::random_coo(5, 6, 18, 84);
      const std::vector<index_t> rows = testing::random_selection(14, 5, 11);
      const std::vector<index_t> cols = testing::random_selection(16, 6, 12);

      const DistMatrix out = assign(
          distribute(ca, grid), distribute(cb, grid),
          testing::dist_vector(rows, grid), testing::dist_vector(cols, grid),
          op);
      const DenseRef expected =
          oracle::oracle_assign(DenseRef::from_coo(ca), DenseRef::from_coo(cb),
                                rows, cols, op);
      CHECK(collect(out) == expected.to_coo());
    }
  }
}

TEST_CASE("assigning an empty block changes nothing") {
  const ProcGrid grid(4);
  const CooMatrix ca = testing::random_coo(10, 10, 30, 85);
  CooMatrix cb;
  cb.nrows = 3;
  cb.ncols = 3;
  const DistMatrix a = distribute(ca, grid);
  const DistMatrix out = assign(a, distribute(cb, grid),
                                testing::dist_vector({1, 4, 7}, grid),
                                testing::dist_vector({0, 5, 9}, grid),
                                AddOp::arithmetic_sum);
  CHECK(out.blocks == a.blocks);
}

TEST_CASE("the combiner only fires where both sides store an entry") {
  // logical-or writes 5.0 into an empty cell: the value passes through
  // untouched because there is nothing to combine with.
  CooMatrix ca;
  ca.nrows = 4;
  ca.ncols = 4;
  ca.entries = {{0, 0, 3.0}};
  CooMatrix cb;
  cb.nrows = 2;
  cb.ncols = 1;
  cb.entries = {{0, 0, 5.0}, {1, 0, 2.0}};

  const ProcGrid grid(1);
  const DistMatrix out = assign(
      distribute(ca, grid), distribute(cb, grid),
      testing::dist_vector({0, 2}, grid), testing::dist_vector({0}, grid),
      AddOp::logical_or);
  CHECK(testing::canonical_entries(collect(out)) ==
        std::vector<CooEntry>{{0, 0, 1.0}, {2, 0, 2.0}});
}

TEST_CASE("assignment validates selections and the block shape") {
  const ProcGrid grid(4);
  const CooMatrix ca = testing::random_coo(10, 10, 20, 95);
  const CooMatrix cb = testing::random_coo(2, 2, 3, 96);
  const DistMatrix a = distribute(ca, grid);
  const DistMatrix b = distribute(cb, grid);
  const DistVector two = testing::dist_vector({1, 2}, grid);

  CHECK(code_of([&] {
          assign(a, b, two, testing::dist_vector({0, 1, 2}, grid),
                 AddOp::arithmetic_sum);
        }) == Errc::dimension_mismatch);
  CHECK(code_of([&] {
          assign(a, b, testing::dist_vector({3, 3}, grid), two,
                 AddOp::arithmetic_sum);
        }) == Errc::duplicate_index);
  CHECK(code_of([&] {
          assign(a, b, two, testing::dist_vector({1, 10}, grid),
                 AddOp::arithmetic_sum);
        }) == Errc::index_out_of_bounds);
}

TEST_CASE("fused assignment matches the two-step composition") {
  for (int p : {1, 4}) {
    for (AddOp op : {AddOp::arithmetic_sum, AddOp::select_second}) {
      const ProcGrid grid(p);
      const CooMatrix ca = testing::random_coo(12, 12, 45, 101);
      const CooMatrix cb = testing::random_coo(4, 4, 9, 102);
      const DistMatrix a = distribute(ca, grid);
      const DistMatrix b = distribute(cb, grid);
      const DistVector rows =
          testing::dist_vector(testing::random_selection(12, 4, 13), grid);
      const DistVector cols =
          testing::dist_vector(testing::random_selection(12, 4, 14), grid);
      const DistVector rperm =
          testing::dist_vector(random_permutation(12, 15), grid);
      const DistVector cperm =
          testing::dist_vector(random_permutation(12, 16), grid);

      const DistMatrix fused =
          assign_permute(a, b, rows, cols, rperm, cperm, op);
      const DistMatrix two_step =
          permute(assign(a, b, rows, cols, op), rperm, cperm);
      CHECK(fused.blocks == two_step.blocks);
      CHECK(fused.layout == two_step.layout);
    }
  }
}

TEST_CASE("fused assignment with identity vectors equals plain assignment") {
  const ProcGrid grid(4);
  const CooMatrix ca = testing::random_coo(10, 10, 30, 111);
  const CooMatrix cb = testing::random_coo(3, 3, 5, 112);
  const DistMatrix a = distribute(ca, grid);
  const DistMatrix b = distribute(cb, grid);
  const DistVector rows = testing::dist_vector({0, 4, 8}, grid);
  const DistVector cols = testing::dist_vector({1, 5, 9}, grid);
  const DistVector id = testing::dist_vector(identity_map(10), grid);

  const DistMatrix fused = assign_permute(a, b, rows, cols, id, id,
                                          AddOp::select_second);
  const DistMatrix plain = assign(a, b, rows, cols, AddOp::select_second);
  CHECK(fused.blocks == plain.blocks);
}

TEST_CASE("fused assignment with an empty block is a plain relocation") {
  const ProcGrid grid(4);
  const CooMatrix ca = testing::random_coo(10, 10, 30, 121);
  CooMatrix cb;
  cb.nrows = 2;
  cb.ncols = 2;
  const DistMatrix a = distribute(ca, grid);
  const DistVector rows = testing::dist_vector({0, 4}, grid);
  const DistVector cols = testing::dist_vector({1, 5}, grid);
  const DistVector rperm =
      testing::dist_vector(random_permutation(10, 17), grid);
  const DistVector cperm =
      testing::dist_vector(random_permutation(10, 18), grid);

  const DistMatrix fused = assign_permute(a, distribute(cb, grid), rows, cols,
                                          rperm, cperm, AddOp::arithmetic_sum);
  const DistMatrix relocated = permute(a, rperm, cperm);
  CHECK(fused.blocks == relocated.blocks);
}

TEST_CASE("fused assignment is thread-count independent") {
  const ProcGrid grid(4);
  const CooMatrix ca = testing::random_coo(16, 16, 60, 131);
  const CooMatrix cb = testing::random_coo(5, 5, 12, 132);
  const DistMatrix a = distribute(ca, grid);
  const DistMatrix b = distribute(cb, grid);
  const DistVector rows =
      testing::dist_vector(testing::random_selection(16, 5, 19), grid);
  const DistVector cols =
      testing::dist_vector(testing::random_selection(16, 5, 20), grid);
  const DistVector rperm =
      testing::dist_vector(random_permutation(16, 21), grid);
  const DistVector cperm =
      testing::dist_vector(random_permutation(16, 22), grid);

  OpOptions one;
  one.nthreads = 1;
  const DistMatrix base =
      assign_permute(a, b, rows, cols, rperm, cperm, AddOp::select_second,
                     one);
  for (int nthreads : {2, 4}) {
    OpOptions many;
    many.nthreads = nthreads;
    CHECK(assign_permute(a, b, rows, cols, rperm, cperm,
                         AddOp::select_second, many)
              .blocks == base.blocks);
  }
}

TEST_CASE("fused assignment validates every input vector") {
  const ProcGrid grid(4);
  const CooMatrix ca = testing::random_coo(8, 8, 16, 141);
  const CooMatrix cb = testing::random_coo(2, 2, 3, 142);
  const DistMatrix a = distribute(ca, grid);
  const DistMatrix b = distribute(cb, grid);
  const DistVector two = testing::dist_vector({1, 2}, grid);
  const DistVector id = testing::dist_vector(identity_map(8), grid);

  CHECK(code_of([&] {
          assign_permute(a, b, two, two, id,
                         testing::dist_vector({0, 1, 1, 3, 4, 5, 6, 7}, grid),
                         AddOp::arithmetic_sum);
        }) == Errc::not_a_permutation);
  CHECK(code_of([&] {
          assign_permute(a, b, two, testing::dist_vector({2, 2}, grid), id,
                         id, AddOp::arithmetic_sum);
        }) == Errc::duplicate_index);
  CHECK(code_of([&] {
          assign_permute(a, b, two, two, testing::dist_vector(
                             identity_map(7), grid), id,
                         AddOp::arithmetic_sum);
        }) == Errc::dimension_mismatch);
}

TEST_CASE("assignment metrics time the combination phase") {
  const ProcGrid grid(4);
  const CooMatrix ca = testing::random_coo(12, 12, 40, 151);
  const CooMatrix cb = testing::random_coo(4, 4, 8, 152);
  PhaseMetrics metrics;
  OpOptions options;
  options.metrics = &metrics;
  assign(distribute(ca, grid), distribute(cb, grid),
         testing::dist_vector(testing::random_selection(12, 4, 23), grid),
         testing::dist_vector(testing::random_selection(12, 4, 24), grid),
         AddOp::arithmetic_sum, options);
  CHECK(metrics.add_s >= 0.0);
  // Only the assigned block travels; the base matrix stays put.
  CHECK(metrics.triples_exchanged == cb.nnz());
}
