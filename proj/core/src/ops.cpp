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

#include "hipkernels/ops.hpp"

#include <algorithm>
#include <chrono>
#include <string>
#include <utility>

#include "hipkernels/build.hpp"
#include "hipkernels/error.hpp"
#include "hipkernels/local_add.hpp"
#include "hipkernels/send_plan.hpp"

namespace hipkernels {

namespace {

using Clock = std::chrono::steady_clock;

struct Stopwatch {
  Clock::time_point last = Clock::now();

  double lap() {
    const Clock::time_point now = Clock::now();
    const double s = std::chrono::duration<double>(now - last).count();
    last = now;
    return s;
  }
};

struct RankStats {
  double gather_s = 0.0;
  double local_s = 0.0;
  double exchange_s = 0.0;
  double build_s = 0.0;
  double add_s = 0.0;
  index_t sent = 0;
  index_t received = 0;
};

struct RankOutcome {
  LocalDcsc block;
  RankStats stats;
};

void require_same_grid(const ProcGrid& a, const ProcGrid& b) {
  if (!(a == b)) {
    throw Error(Errc::invalid_argument,
                "operands are distributed over different process grids");
  }
}

void require_threads(const OpOptions& options) {
  if (options.nthreads < 1) {
    throw Error(Errc::invalid_argument, "nthreads must be at least 1");
  }
}

template <class T>
index_t total_size(const std::vector<std::vector<T>>& parts) {
  index_t total = 0;
  for (const auto& part : parts) total += static_cast<index_t>(part.size());
  return total;
}

/// (global position, value) pairs of one rank's dense piece.
std::vector<SparsePair> piece_to_pairs(const DistVector& v, int rank) {
  const BlockRange range = v.layout.range_of_rank(rank);
  const auto& piece = v.pieces[static_cast<std::size_t>(rank)];
  std::vector<SparsePair> pairs;
  pairs.reserve(piece.size());
  for (std::size_t off = 0; off < piece.size(); ++off) {
    pairs.push_back({range.begin + static_cast<index_t>(off), piece[off]});
  }
  return pairs;
}

/// Core of the sparse swap: routes each (i, t) as (t, i) to the owner of t
/// under `out` and returns this rank's share, sorted by index.
std::vector<SparsePair> scatter_swap_pairs(RankContext& ctx,
                                           std::span<const SparsePair> mine,
                                           const VectorLayout& out) {
  const int p = ctx.nprocs();
  std::vector<std::vector<SparsePair>> send(static_cast<std::size_t>(p));
  for (const SparsePair& pair : mine) {
    if (pair.value < 0 || pair.value >= out.length()) {
      throw Error(Errc::index_out_of_bounds,
                  "index " + std::to_string(pair.value) + " outside [0," +
                      std::to_string(out.length()) + ")");
    }
    send[static_cast<std::size_t>(out.owner(pair.value))].push_back(
        {pair.value, pair.index});
  }
  auto recv = ctx.alltoallv(std::move(send));
  std::vector<SparsePair> result;
  result.reserve(static_cast<std::size_t>(total_size(recv)));
  for (auto& part : recv) {
    result.insert(result.end(), part.begin(), part.end());
  }
  std::sort(result.begin(), result.end(),
            [](const SparsePair& a, const SparsePair& b) {
              return a.index < b.index;
            });
  for (std::size_t i = 1; i < result.size(); ++i) {
    if (result[i].index == result[i - 1].index) {
      throw Error(Errc::duplicate_target,
                  "index " + std::to_string(result[i].index) +
                      " is targeted twice");
    }
  }
  return result;
}

/// Moves a dense piece into another layout of the same length.  No-op when
/// the layouts already agree; one personalized exchange otherwise.
std::vector<index_t> redistribute_piece(RankContext& ctx, const DistVector& v,
                                        const VectorLayout& out) {
  if (v.layout == out) {
    return v.pieces[static_cast<std::size_t>(ctx.rank())];
  }
  if (v.layout.length() != out.length()) {
    throw Error(Errc::dimension_mismatch,
                "cannot redistribute a vector across different lengths");
  }
  const int p = ctx.nprocs();
  std::vector<std::vector<SparsePair>> send(static_cast<std::size_t>(p));
  for (const SparsePair& pair : piece_to_pairs(v, ctx.rank())) {
    send[static_cast<std::size_t>(out.owner(pair.index))].push_back(pair);
  }
  auto recv = ctx.alltoallv(std::move(send));
  const BlockRange mine = out.range_of_rank(ctx.rank());
  std::vector<index_t> piece(static_cast<std::size_t>(mine.size()));
  for (const auto& part : recv) {
    for (const SparsePair& pair : part) {
      piece[static_cast<std::size_t>(pair.index - mine.begin)] = pair.value;
    }
  }
  return piece;
}

/// Scatters each value to the owner of that position under `space` so every
/// repeat meets its twin at one rank.  Values must lie in [0, space.length).
void validate_unique_targets(RankContext& ctx, const VectorLayout& space,
                             std::span<const index_t> values) {
  const int p = ctx.nprocs();
  std::vector<std::vector<index_t>> send(static_cast<std::size_t>(p));
  for (const index_t val : values) {
    if (val < 0 || val >= space.length()) {
      throw Error(Errc::index_out_of_bounds,
                  "index " + std::to_string(val) + " outside [0," +
                      std::to_string(space.length()) + ")");
    }
    send[static_cast<std::size_t>(space.owner(val))].push_back(val);
  }
  auto recv = ctx.alltoallv(std::move(send));
  std::vector<index_t> seen;
  seen.reserve(static_cast<std::size_t>(total_size(recv)));
  for (const auto& part : recv) {
    seen.insert(seen.end(), part.begin(), part.end());
  }
  std::sort(seen.begin(), seen.end());
  const auto dup = std::adjacent_find(seen.begin(), seen.end());
  if (dup != seen.end()) {
    throw Error(Errc::duplicate_index,
                "index " + std::to_string(*dup) + " selected twice");
  }
}

/// Composes two distributed maps: this rank's piece of pos -> via[src[pos]].
/// `src_piece` lives under src_space; `via_piece` is this rank's piece of
/// the map over via_space.  Repeated src values raise DuplicateIndex,
/// out-of-range ones IndexOutOfBounds.  Two exchanges: one to look the
/// values up at their owners, one to carry the results home.
std::vector<index_t> compose_through_piece(RankContext& ctx,
                                           const VectorLayout& src_space,
                                           std::span<const index_t> src_piece,
                                           const VectorLayout& via_space,
                                           std::span<const index_t> via_piece) {
  const int p = ctx.nprocs();
  const BlockRange src_mine = src_space.range_of_rank(ctx.rank());
  std::vector<std::vector<SparsePair>> lookup(static_cast<std::size_t>(p));
  for (std::size_t off = 0; off < src_piece.size(); ++off) {
    const index_t pos = src_mine.begin + static_cast<index_t>(off);
    const index_t val = src_piece[off];
    if (val < 0 || val >= via_space.length()) {
      throw Error(Errc::index_out_of_bounds,
                  "index " + std::to_string(val) + " outside [0," +
                      std::to_string(via_space.length()) + ")");
    }
    lookup[static_cast<std::size_t>(via_space.owner(val))].push_back(
        {val, pos});
  }
  auto asked = ctx.alltoallv(std::move(lookup));

  const BlockRange via_mine = via_space.range_of_rank(ctx.rank());
  std::vector<SparsePair> requests;
  requests.reserve(static_cast<std::size_t>(total_size(asked)));
  for (const auto& part : asked) {
    requests.insert(requests.end(), part.begin(), part.end());
  }
  std::sort(requests.begin(), requests.end(),
            [](const SparsePair& a, const SparsePair& b) {
              return a.index < b.index;
            });
  for (std::size_t i = 1; i < requests.size(); ++i) {
    if (requests[i].index == requests[i - 1].index) {
      throw Error(Errc::duplicate_index,
                  "index " + std::to_string(requests[i].index) +
                      " selected twice");
    }
  }
  std::vector<std::vector<SparsePair>> replies(static_cast<std::size_t>(p));
  for (const SparsePair& req : requests) {
    const index_t mapped =
        via_piece[static_cast<std::size_t>(req.index - via_mine.begin)];
    replies[static_cast<std::size_t>(src_space.owner(req.value))].push_back(
        {req.value, mapped});
  }
  auto answered = ctx.alltoallv(std::move(replies));
  std::vector<index_t> composed(static_cast<std::size_t>(src_mine.size()));
  for (const auto& part : answered) {
    for (const SparsePair& pair : part) {
      composed[static_cast<std::size_t>(pair.index - src_mine.begin)] =
          pair.value;
    }
  }
  return composed;
}

/// Collects per-rank outcomes into the result matrix, reducing stats into
/// `options.metrics` when requested.
DistMatrix assemble(const MatrixLayout& layout,
                    std::vector<RankOutcome> outcomes,
                    const OpOptions& options) {
  DistMatrix out{layout, {}};
  out.blocks.reserve(outcomes.size());
  PhaseMetrics pm;
  pm.sent_per_rank.reserve(outcomes.size());
  pm.recv_per_rank.reserve(outcomes.size());
  for (RankOutcome& rc : outcomes) {
    out.blocks.push_back(std::move(rc.block));
    pm.gather_s = std::max(pm.gather_s, rc.stats.gather_s);
    pm.local_s = std::max(pm.local_s, rc.stats.local_s);
    pm.exchange_s = std::max(pm.exchange_s, rc.stats.exchange_s);
    pm.build_s = std::max(pm.build_s, rc.stats.build_s);
    pm.add_s = std::max(pm.add_s, rc.stats.add_s);
    pm.sent_per_rank.push_back(rc.stats.sent);
    pm.recv_per_rank.push_back(rc.stats.received);
    pm.triples_exchanged += rc.stats.sent;
  }
  if (options.metrics) {
    *options.metrics = std::move(pm);
  }
  return out;
}

void fill_imbalances(const OpOptions& options, const DistMatrix& before,
                     const DistMatrix& after) {
  if (!options.metrics) return;
  if (before.total_nnz() > 0) {
    options.metrics->imbalance_before = load_imbalance(before);
  }
  if (after.total_nnz() > 0) {
    options.metrics->imbalance_after = load_imbalance(after);
  }
}

}  // namespace

std::vector<index_t> swap_index_value_piece(RankContext& ctx,
                                            const DistVector& v,
                                            const VectorLayout& out) {
  require_same_grid(v.layout.grid(), ctx.grid());
  require_same_grid(out.grid(), ctx.grid());
  if (v.layout.length() != out.length()) {
    throw Error(Errc::dimension_mismatch,
                "a permutation and its inverse have the same length");
  }
  const int p = ctx.nprocs();
  std::vector<std::vector<SparsePair>> send(static_cast<std::size_t>(p));
  for (const SparsePair& pair : piece_to_pairs(v, ctx.rank())) {
    if (pair.value < 0 || pair.value >= out.length()) {
      throw Error(Errc::not_a_permutation,
                  "value " + std::to_string(pair.value) + " outside [0," +
                      std::to_string(out.length()) + ")");
    }
    send[static_cast<std::size_t>(out.owner(pair.value))].push_back(
        {pair.value, pair.index});
  }
  auto recv = ctx.alltoallv(std::move(send));
  const BlockRange mine = out.range_of_rank(ctx.rank());
  std::vector<index_t> piece(static_cast<std::size_t>(mine.size()), -1);
  for (const auto& part : recv) {
    for (const SparsePair& pair : part) {
      index_t& slot = piece[static_cast<std::size_t>(pair.index - mine.begin)];
      if (slot != -1) {
        throw Error(Errc::not_a_permutation,
                    "value " + std::to_string(pair.index) + " appears twice");
      }
      slot = pair.value;
    }
  }
  for (std::size_t off = 0; off < piece.size(); ++off) {
    if (piece[off] == -1) {
      throw Error(Errc::not_a_permutation,
                  "value " +
                      std::to_string(mine.begin + static_cast<index_t>(off)) +
                      " never occurs");
    }
  }
  return piece;
}

std::vector<SparsePair> sparse_swap_index_value_piece(RankContext& ctx,
                                                      const DistSparseVector& v,
                                                      const VectorLayout& out) {
  require_same_grid(v.layout.grid(), ctx.grid());
  require_same_grid(out.grid(), ctx.grid());
  return scatter_swap_pairs(
      ctx, v.pieces[static_cast<std::size_t>(ctx.rank())], out);
}

std::vector<index_t> gather_band_segment(RankContext& ctx,
                                         const VectorLayout& layout,
                                         std::vector<index_t> piece) {
  require_same_grid(layout.grid(), ctx.grid());
  const bool by_row = layout.orientation() == VectorOrientation::by_grid_row;
  std::vector<int> band = by_row ? row_band_ranks(ctx.grid(), ctx.row())
                                 : col_band_ranks(ctx.grid(), ctx.col());
  auto segment = ctx.allgather_band(std::move(band), std::move(piece));
  const int s = by_row ? ctx.row() : ctx.col();
  if (static_cast<index_t>(segment.size()) != layout.segment(s).size()) {
    throw Error(Errc::invalid_argument,
                "gathered pieces do not add up to the segment");
  }
  return segment;
}

std::vector<SparsePair> gather_band_segment_sparse(
    RankContext& ctx, const VectorLayout& layout,
    std::vector<SparsePair> piece) {
  require_same_grid(layout.grid(), ctx.grid());
  const bool by_row = layout.orientation() == VectorOrientation::by_grid_row;
  std::vector<int> band = by_row ? row_band_ranks(ctx.grid(), ctx.row())
                                 : col_band_ranks(ctx.grid(), ctx.col());
  // Band members hold ascending subranges, so the concatenation arrives
  // already sorted by index.
  return ctx.allgather_band(std::move(band), std::move(piece));
}

std::pair<std::vector<index_t>, std::vector<index_t>> gather_row_col_maps(
    RankContext& ctx, const DistVector& rowvec, const DistVector& colvec) {
  if (rowvec.layout.orientation() != VectorOrientation::by_grid_row ||
      colvec.layout.orientation() != VectorOrientation::by_grid_col) {
    throw Error(Errc::invalid_argument,
                "row maps gather along grid rows and column maps along grid "
                "columns; check the vector orientations");
  }
  auto row_map = gather_band_segment(
      ctx, rowvec.layout,
      rowvec.pieces[static_cast<std::size_t>(ctx.rank())]);
  auto col_map = gather_band_segment(
      ctx, colvec.layout,
      colvec.pieces[static_cast<std::size_t>(ctx.rank())]);
  return {std::move(row_map), std::move(col_map)};
}

DistVector swap_index_value(const DistVector& v,
                            VectorOrientation orientation) {
  const VectorLayout out(v.layout.grid(), v.layout.length(), orientation);
  auto pieces =
      run_ranks(v.layout.grid().nprocs(), [&](RankContext& ctx) {
        return swap_index_value_piece(ctx, v, out);
      });
  return DistVector{out, std::move(pieces)};
}

DistSparseVector sparse_swap_index_value(const DistSparseVector& v,
                                         const VectorLayout& out_layout) {
  require_same_grid(v.layout.grid(), out_layout.grid());
  auto pieces =
      run_ranks(out_layout.grid().nprocs(), [&](RankContext& ctx) {
        return sparse_swap_index_value_piece(ctx, v, out_layout);
      });
  return DistSparseVector{out_layout, std::move(pieces)};
}

DistMatrix permute(const DistMatrix& a, const DistVector& pvec,
                   const DistVector& qvec, const OpOptions& options) {
  require_threads(options);
  require_same_grid(a.layout.grid(), pvec.layout.grid());
  require_same_grid(a.layout.grid(), qvec.layout.grid());
  if (pvec.length() != a.nrows() || qvec.length() != a.ncols()) {
    throw Error(Errc::dimension_mismatch,
                "permutation lengths must match the matrix dimensions");
  }
  const ProcGrid& grid = a.layout.grid();
  const VectorLayout row_space(grid, a.nrows(), VectorOrientation::by_grid_row);
  const VectorLayout col_space(grid, a.ncols(), VectorOrientation::by_grid_col);

  auto outcomes = run_ranks(grid.nprocs(), [&](RankContext& ctx) {
    Stopwatch sw;
    RankStats st;
    auto row_inv = swap_index_value_piece(ctx, pvec, row_space);
    auto col_inv = swap_index_value_piece(ctx, qvec, col_space);
    auto row_map = gather_band_segment(ctx, row_space, std::move(row_inv));
    auto col_map = gather_band_segment(ctx, col_space, std::move(col_inv));
    st.gather_s = sw.lap();

    const SendPlan plan = prepare_send_buffer(
        a.blocks[static_cast<std::size_t>(ctx.rank())], row_map, col_map,
        a.layout, options.nthreads);
    st.local_s = sw.lap();

    auto recv = ctx.alltoallv(plan.dest_buffers());
    st.sent = plan.total();
    st.received = total_size(recv);
    st.exchange_s = sw.lap();

    const auto [bm, bn] = a.layout.block_dims(ctx.row(), ctx.col());
    LocalDcsc block = build_local_matrix(recv, bm, bn, options.nthreads);
    st.build_s = sw.lap();
    return RankOutcome{std::move(block), st};
  });
  DistMatrix result = assemble(a.layout, std::move(outcomes), options);
  fill_imbalances(options, a, result);
  return result;
}

DistMatrix extract(const DistMatrix& a, const DistVector& row_select,
                   const DistVector& col_select, const OpOptions& options) {
  require_threads(options);
  require_same_grid(a.layout.grid(), row_select.layout.grid());
  require_same_grid(a.layout.grid(), col_select.layout.grid());
  const ProcGrid& grid = a.layout.grid();
  const MatrixLayout out_layout(grid, row_select.length(),
                                col_select.length());
  const VectorLayout row_space(grid, a.nrows(), VectorOrientation::by_grid_row);
  const VectorLayout col_space(grid, a.ncols(), VectorOrientation::by_grid_col);

  auto program = [&](RankContext& ctx) {
    Stopwatch sw;
    RankStats st;
    std::vector<SparsePair> sp_row;
    std::vector<SparsePair> sp_col;
    try {
      sp_row = scatter_swap_pairs(
          ctx, piece_to_pairs(row_select, ctx.rank()), row_space);
      sp_col = scatter_swap_pairs(
          ctx, piece_to_pairs(col_select, ctx.rank()), col_space);
    } catch (const Error& e) {
      if (e.code() == Errc::duplicate_target) {
        throw Error(Errc::duplicate_index, "selection repeats an index");
      }
      throw;
    }
    auto row_pairs =
        gather_band_segment_sparse(ctx, row_space, std::move(sp_row));
    auto col_pairs =
        gather_band_segment_sparse(ctx, col_space, std::move(sp_col));
    const BlockRange rows = a.layout.row_block(ctx.row());
    const BlockRange cols = a.layout.col_block(ctx.col());
    for (SparsePair& pair : row_pairs) pair.index -= rows.begin;
    for (SparsePair& pair : col_pairs) pair.index -= cols.begin;
    st.gather_s = sw.lap();

    const SendPlan plan = extract_prepare_send_buffer(
        a.blocks[static_cast<std::size_t>(ctx.rank())], row_pairs, col_pairs,
        out_layout, options.nthreads);
    st.local_s = sw.lap();

    auto recv = ctx.alltoallv(plan.dest_buffers());
    st.sent = plan.total();
    st.received = total_size(recv);
    st.exchange_s = sw.lap();

    const auto [bm, bn] = out_layout.block_dims(ctx.row(), ctx.col());
    LocalDcsc block = build_local_matrix(recv, bm, bn, options.nthreads);
    st.build_s = sw.lap();
    return RankOutcome{std::move(block), st};
  };
  DistMatrix result = assemble(out_layout, run_ranks(grid.nprocs(), program),
                               options);
  fill_imbalances(options, a, result);
  return result;
}

DistMatrix assign(const DistMatrix& a, const DistMatrix& b,
                  const DistVector& row_select, const DistVector& col_select,
                  AddOp op, const OpOptions& options) {
  require_threads(options);
  require_same_grid(a.layout.grid(), b.layout.grid());
  require_same_grid(a.layout.grid(), row_select.layout.grid());
  require_same_grid(a.layout.grid(), col_select.layout.grid());
  if (b.nrows() != row_select.length() || b.ncols() != col_select.length()) {
    throw Error(Errc::dimension_mismatch,
                "the assigned matrix must measure |row_select| x "
                "|col_select|");
  }
  const ProcGrid& grid = a.layout.grid();
  const VectorLayout brow_space(grid, b.nrows(),
                                VectorOrientation::by_grid_row);
  const VectorLayout bcol_space(grid, b.ncols(),
                                VectorOrientation::by_grid_col);
  const VectorLayout arow_space(grid, a.nrows(),
                                VectorOrientation::by_grid_row);
  const VectorLayout acol_space(grid, a.ncols(),
                                VectorOrientation::by_grid_col);

  auto program = [&](RankContext& ctx) {
    Stopwatch sw;
    RankStats st;
    auto row_piece = redistribute_piece(ctx, row_select, brow_space);
    auto col_piece = redistribute_piece(ctx, col_select, bcol_space);
    validate_unique_targets(ctx, arow_space, row_piece);
    validate_unique_targets(ctx, acol_space, col_piece);
    auto row_map = gather_band_segment(ctx, brow_space, std::move(row_piece));
    auto col_map = gather_band_segment(ctx, bcol_space, std::move(col_piece));
    st.gather_s = sw.lap();

    const SendPlan plan = prepare_send_buffer(
        b.blocks[static_cast<std::size_t>(ctx.rank())], row_map, col_map,
        a.layout, options.nthreads);
    st.local_s = sw.lap();

    auto recv = ctx.alltoallv(plan.dest_buffers());
    st.sent = plan.total();
    st.received = total_size(recv);
    st.exchange_s = sw.lap();

    const auto [bm, bn] = a.layout.block_dims(ctx.row(), ctx.col());
    LocalDcsc incoming = build_local_matrix(recv, bm, bn, options.nthreads);
    st.build_s = sw.lap();

    LocalDcsc block = local_add(
        a.blocks[static_cast<std::size_t>(ctx.rank())], incoming, op);
    st.add_s = sw.lap();
    return RankOutcome{std::move(block), st};
  };
  DistMatrix result =
      assemble(a.layout, run_ranks(grid.nprocs(), program), options);
  fill_imbalances(options, a, result);
  return result;
}

DistMatrix assign_permute(const DistMatrix& a, const DistMatrix& b,
                          const DistVector& row_select,
                          const DistVector& col_select,
                          const DistVector& rperm, const DistVector& cperm,
                          AddOp op, const OpOptions& options) {
  require_threads(options);
  require_same_grid(a.layout.grid(), b.layout.grid());
  require_same_grid(a.layout.grid(), row_select.layout.grid());
  require_same_grid(a.layout.grid(), col_select.layout.grid());
  require_same_grid(a.layout.grid(), rperm.layout.grid());
  require_same_grid(a.layout.grid(), cperm.layout.grid());
  if (b.nrows() != row_select.length() || b.ncols() != col_select.length()) {
    throw Error(Errc::dimension_mismatch,
                "the assigned matrix must measure |row_select| x "
                "|col_select|");
  }
  if (rperm.length() != a.nrows() || cperm.length() != a.ncols()) {
    throw Error(Errc::dimension_mismatch,
                "permutation lengths must match the matrix dimensions");
  }
  const ProcGrid& grid = a.layout.grid();
  const VectorLayout arow_space(grid, a.nrows(),
                                VectorOrientation::by_grid_row);
  const VectorLayout acol_space(grid, a.ncols(),
                                VectorOrientation::by_grid_col);
  const VectorLayout brow_space(grid, b.nrows(),
                                VectorOrientation::by_grid_row);
  const VectorLayout bcol_space(grid, b.ncols(),
                                VectorOrientation::by_grid_col);

  auto program = [&](RankContext& ctx) {
    Stopwatch sw;
    RankStats st;
    // The permutation inverses route A's nonzeros; the selections composed
    // through them route B's, all in the same exchange.
    auto row_inv = swap_index_value_piece(ctx, rperm, arow_space);
    auto col_inv = swap_index_value_piece(ctx, cperm, acol_space);
    auto row_piece = redistribute_piece(ctx, row_select, brow_space);
    auto col_piece = redistribute_piece(ctx, col_select, bcol_space);
    auto comp_row = compose_through_piece(ctx, brow_space, row_piece,
                                          arow_space, row_inv);
    auto comp_col = compose_through_piece(ctx, bcol_space, col_piece,
                                          acol_space, col_inv);
    auto a_row_map = gather_band_segment(ctx, arow_space, std::move(row_inv));
    auto a_col_map = gather_band_segment(ctx, acol_space, std::move(col_inv));
    auto b_row_map = gather_band_segment(ctx, brow_space, std::move(comp_row));
    auto b_col_map = gather_band_segment(ctx, bcol_space, std::move(comp_col));
    st.gather_s = sw.lap();

    const int rank = ctx.rank();
    const SendPlan plan_a = prepare_send_buffer(
        a.blocks[static_cast<std::size_t>(rank)], a_row_map, a_col_map,
        a.layout, options.nthreads);
    const SendPlan plan_b = prepare_send_buffer(
        b.blocks[static_cast<std::size_t>(rank)], b_row_map, b_col_map,
        a.layout, options.nthreads);
    std::vector<std::vector<TaggedTriple>> fused(
        static_cast<std::size_t>(ctx.nprocs()));
    for (int d = 0; d < ctx.nprocs(); ++d) {
      auto& out = fused[static_cast<std::size_t>(d)];
      const auto from_a = plan_a.for_destination(d);
      const auto from_b = plan_b.for_destination(d);
      out.reserve(from_a.size() + from_b.size());
      for (const Triple& t : from_a) out.push_back({t.lrow, t.lcol, t.val, 0});
      for (const Triple& t : from_b) out.push_back({t.lrow, t.lcol, t.val, 1});
    }
    st.local_s = sw.lap();

    auto recv = ctx.alltoallv(std::move(fused));
    st.sent = plan_a.total() + plan_b.total();
    st.received = total_size(recv);
    st.exchange_s = sw.lap();

    const auto [bm, bn] = a.layout.block_dims(ctx.row(), ctx.col());
    LocalDcsc block =
        build_local_matrix_resolving(recv, bm, bn, op, options.nthreads);
    st.build_s = sw.lap();
    return RankOutcome{std::move(block), st};
  };
  DistMatrix result =
      assemble(a.layout, run_ranks(grid.nprocs(), program), options);
  fill_imbalances(options, a, result);
  return result;
}

}  // namespace hipkernels
