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

// Microbenchmarks for the two per-rank kernels: routing local triples into
// a destination-ordered send buffer, and rebuilding compressed blocks from
// received triples.  Thread count is the sweep axis.

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <vector>

#include "hipkernels/build.hpp"
#include "hipkernels/dcsc.hpp"
#include "hipkernels/grid.hpp"
#include "hipkernels/send_plan.hpp"

namespace {

using namespace hipkernels;

LocalDcsc random_block(index_t side, index_t nnz, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<index_t> pick(0, side - 1);
  std::vector<Triple> triples;
  triples.reserve(static_cast<std::size_t>(nnz));
  std::vector<char> used(static_cast<std::size_t>(side * side), 0);
  while (static_cast<index_t>(triples.size()) < nnz) {
    const index_t i = pick(rng);
    const index_t j = pick(rng);
    char& slot = used[static_cast<std::size_t>(i * side + j)];
    if (slot) continue;
    slot = 1;
    triples.push_back({i, j, static_cast<Value>(i + j + 1)});
  }
  std::sort(triples.begin(), triples.end(),
            [](const Triple& a, const Triple& b) {
              return a.lcol != b.lcol ? a.lcol < b.lcol : a.lrow < b.lrow;
            });
  return LocalDcsc::from_sorted_triples(triples, side, side);
}

std::vector<index_t> shuffled_iota(index_t n, std::uint64_t seed) {
  std::vector<index_t> v(static_cast<std::size_t>(n));
  for (index_t i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = i;
  std::mt19937_64 rng(seed);
  std::shuffle(v.begin(), v.end(), rng);
  return v;
}

void bm_prepare_send_buffer(benchmark::State& state) {
  const index_t side = 1024;
  const index_t nnz = 64 * 1024;
  const int nthreads = static_cast<int>(state.range(0));
  const LocalDcsc block = random_block(side, nnz, 11);
  const MatrixLayout dst(ProcGrid(16), 4 * side, 4 * side);
  // One destination per local row/column, scattered over the full matrix.
  std::vector<index_t> row_map = shuffled_iota(4 * side, 12);
  row_map.resize(static_cast<std::size_t>(side));
  std::vector<index_t> col_map = shuffled_iota(4 * side, 13);
  col_map.resize(static_cast<std::size_t>(side));
  for (auto _ : state) {
    SendPlan plan = prepare_send_buffer(block, row_map, col_map, dst,
                                        nthreads);
    benchmark::DoNotOptimize(plan.buffer.data());
  }
  state.SetItemsProcessed(state.iterations() * nnz);
}

void bm_build_local_matrix(benchmark::State& state) {
  const index_t side = 1024;
  const index_t nnz = 64 * 1024;
  const int nthreads = static_cast<int>(state.range(0));
  const LocalDcsc block = random_block(side, nnz, 21);
  // Split the triples round-robin over four pretend source ranks.
  std::vector<std::vector<Triple>> recv(4);
  std::size_t k = 0;
  for (const Triple& t : block.to_triples()) recv[k++ % 4].push_back(t);
  for (auto _ : state) {
    LocalDcsc rebuilt = build_local_matrix(recv, side, side, nthreads);
    benchmark::DoNotOptimize(rebuilt.nnz());
  }
  state.SetItemsProcessed(state.iterations() * nnz);
}

BENCHMARK(bm_prepare_send_buffer)->Arg(1)->Arg(2)->Arg(4)->Arg(8);
BENCHMARK(bm_build_local_matrix)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
