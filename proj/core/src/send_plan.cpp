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

#include "hipkernels/send_plan.hpp"

#include <algorithm>
#include <string>

#include "hipkernels/error.hpp"
#include "parallel.hpp"

namespace hipkernels {

namespace {

/// Split points in compressed-column space [0, nzc] such that each of the
/// nthreads parts carries roughly nnz/nthreads nonzeros.  Split positions
/// snap to whole columns: the prefix array cp is scanned for the offset
/// closest to each thread's ideal share.
std::vector<index_t> partition_columns(const LocalDcsc& local, int nthreads) {
  const std::span<const index_t> cp = local.cp();
  const index_t nzc = local.nzc();
  std::vector<index_t> splits(static_cast<std::size_t>(nthreads) + 1, 0);
  splits[static_cast<std::size_t>(nthreads)] = nzc;
  for (int t = 1; t < nthreads; ++t) {
    const index_t target = local.nnz() * t / nthreads;
    auto it = std::lower_bound(cp.begin(), cp.end(), target);
    index_t pos = it - cp.begin();
    if (pos > 0 && *it - target > target - *(it - 1)) --pos;
    pos = std::clamp<index_t>(pos, splits[static_cast<std::size_t>(t) - 1], nzc);
    splits[static_cast<std::size_t>(t)] = pos;
  }
  return splits;
}

/// Shared two-pass scaffold.  `enumerate(t, sink)` must visit thread t's
/// share of the routed nonzeros in a fixed order and call
/// sink(destination_rank, triple) for each; it runs once to count and once
/// to write, so it has to be repeatable.
template <class EnumerateFn>
SendPlan two_pass_plan(int nthreads, int nprocs, EnumerateFn&& enumerate) {
  if (nthreads < 1) {
    throw Error(Errc::invalid_argument, "nthreads must be at least 1");
  }
  SendPlan plan;
  plan.nthreads = nthreads;
  plan.nprocs = nprocs;
  plan.nnz_counter.assign(
      static_cast<std::size_t>(nthreads) * static_cast<std::size_t>(nprocs), 0);

  detail::run_on_threads(nthreads, [&](int t) {
    index_t* counts =
        plan.nnz_counter.data() +
        static_cast<std::size_t>(t) * static_cast<std::size_t>(nprocs);
    enumerate(t, [&](int d, const Triple&) { ++counts[d]; });
  });

  plan.proc_pointer.assign(static_cast<std::size_t>(nprocs), 0);
  plan.thread_offset.assign(plan.nnz_counter.size(), 0);
  index_t running = 0;
  for (int d = 0; d < nprocs; ++d) {
    plan.proc_pointer[static_cast<std::size_t>(d)] = running;
    index_t col_sum = 0;
    for (int t = 0; t < nthreads; ++t) {
      const std::size_t td = static_cast<std::size_t>(t) *
                                 static_cast<std::size_t>(nprocs) +
                             static_cast<std::size_t>(d);
      plan.thread_offset[td] = col_sum;
      col_sum += plan.nnz_counter[td];
    }
    running += col_sum;
  }

  plan.buffer.resize(static_cast<std::size_t>(running));
  detail::run_on_threads(nthreads, [&](int t) {
    std::vector<index_t> cursor(static_cast<std::size_t>(nprocs), 0);
    enumerate(t, [&](int d, const Triple& triple) {
      const index_t idx = send_buffer_index(
          t, d, cursor[static_cast<std::size_t>(d)]++, plan.proc_pointer,
          plan.thread_offset, nprocs);
      plan.buffer[static_cast<std::size_t>(idx)] = triple;
    });
  });
  return plan;
}

[[noreturn]] void throw_mapped_out_of_range(index_t di, index_t dj,
                                            const MatrixLayout& dst) {
  throw Error(Errc::mapping_out_of_range,
              "mapped entry (" + std::to_string(di) + "," +
                  std::to_string(dj) + ") outside destination " +
                  std::to_string(dst.nrows()) + "x" +
                  std::to_string(dst.ncols()));
}

}  // namespace

std::vector<std::vector<Triple>> SendPlan::dest_buffers() const {
  std::vector<std::vector<Triple>> out(static_cast<std::size_t>(nprocs));
  for (int d = 0; d < nprocs; ++d) {
    const auto run = for_destination(d);
    out[static_cast<std::size_t>(d)].assign(run.begin(), run.end());
  }
  return out;
}

SendPlan prepare_send_buffer(const LocalDcsc& local,
                             std::span<const index_t> row_map,
                             std::span<const index_t> col_map,
                             const MatrixLayout& dst, int nthreads) {
  if (static_cast<index_t>(row_map.size()) != local.nrows() ||
      static_cast<index_t>(col_map.size()) != local.ncols()) {
    throw Error(Errc::mapping_out_of_range,
                "index maps do not cover the local block");
  }
  const std::vector<index_t> splits = partition_columns(local, nthreads);
  const ProcGrid& grid = dst.grid();

  auto enumerate = [&](int t, auto&& sink) {
    const auto jc = local.jc();
    const auto cp = local.cp();
    const auto ir = local.ir();
    const auto num = local.num();
    for (index_t k = splits[static_cast<std::size_t>(t)];
         k < splits[static_cast<std::size_t>(t) + 1]; ++k) {
      const index_t dj = col_map[static_cast<std::size_t>(jc[static_cast<std::size_t>(k)])];
      if (dj < 0 || dj >= dst.ncols()) {
        throw_mapped_out_of_range(0, dj, dst);
      }
      const int cblock = balanced_part_of(dst.ncols(), grid.side(), dj);
      const index_t lj = dj - dst.col_block(cblock).begin;
      for (index_t off = cp[static_cast<std::size_t>(k)];
           off < cp[static_cast<std::size_t>(k) + 1]; ++off) {
        const index_t di = row_map[static_cast<std::size_t>(ir[static_cast<std::size_t>(off)])];
        if (di < 0 || di >= dst.nrows()) {
          throw_mapped_out_of_range(di, dj, dst);
        }
        const int rblock = balanced_part_of(dst.nrows(), grid.side(), di);
        const index_t li = di - dst.row_block(rblock).begin;
        sink(grid.rank_of(rblock, cblock),
             Triple{li, lj, num[static_cast<std::size_t>(off)]});
      }
    }
  };
  return two_pass_plan(nthreads, grid.nprocs(), enumerate);
}

SendPlan extract_prepare_send_buffer(const LocalDcsc& local,
                                     std::span<const SparsePair> row_select,
                                     std::span<const SparsePair> col_select,
                                     const MatrixLayout& dst, int nthreads) {
  auto strictly_ascending = [](std::span<const SparsePair> sel) {
    for (std::size_t i = 1; i < sel.size(); ++i) {
      if (sel[i].index <= sel[i - 1].index) return false;
    }
    return true;
  };
  if (!strictly_ascending(row_select) || !strictly_ascending(col_select)) {
    throw Error(Errc::invalid_argument,
                "selections must be sorted by local index, without repeats");
  }
  for (const SparsePair& p : row_select) {
    if (p.index < 0 || p.index >= local.nrows()) {
      throw Error(Errc::invalid_argument, "row selection outside local block");
    }
  }
  for (const SparsePair& p : col_select) {
    if (p.index < 0 || p.index >= local.ncols()) {
      throw Error(Errc::invalid_argument,
                  "column selection outside local block");
    }
  }

  const ProcGrid& grid = dst.grid();
  const index_t npairs = static_cast<index_t>(col_select.size());

  auto enumerate = [&](int t, auto&& sink) {
    const auto cp = local.cp();
    const auto ir = local.ir();
    const auto num = local.num();
    const index_t begin = balanced_part_start(npairs, nthreads, t);
    const index_t end = balanced_part_start(npairs, nthreads, t + 1);
    for (index_t s = begin; s < end; ++s) {
      const SparsePair& col_pair = col_select[static_cast<std::size_t>(s)];
      const index_t k = local.find_column(col_pair.index);
      if (k < 0) continue;  // selected column holds no nonzeros here
      const index_t dj = col_pair.value;
      if (dj < 0 || dj >= dst.ncols()) {
        throw_mapped_out_of_range(0, dj, dst);
      }
      const int cblock = balanced_part_of(dst.ncols(), grid.side(), dj);
      const index_t lj = dj - dst.col_block(cblock).begin;
      const index_t* rows_begin = ir.data() + cp[static_cast<std::size_t>(k)];
      const index_t* rows_end = ir.data() + cp[static_cast<std::size_t>(k) + 1];
      for (const SparsePair& row_pair : row_select) {
        const index_t* hit =
            std::lower_bound(rows_begin, rows_end, row_pair.index);
        if (hit == rows_end || *hit != row_pair.index) continue;
        const index_t di = row_pair.value;
        if (di < 0 || di >= dst.nrows()) {
          throw_mapped_out_of_range(di, dj, dst);
        }
        const int rblock = balanced_part_of(dst.nrows(), grid.side(), di);
        const index_t li = di - dst.row_block(rblock).begin;
        const std::size_t off =
            static_cast<std::size_t>(cp[static_cast<std::size_t>(k)] +
                                     (hit - rows_begin));
        sink(grid.rank_of(rblock, cblock), Triple{li, lj, num[off]});
      }
    }
  };
  return two_pass_plan(nthreads, grid.nprocs(), enumerate);
}

}  // namespace hipkernels
