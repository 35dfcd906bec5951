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

// End-to-end timings for the distributed operations over the simulated
// runtime.  The sweep axis is the rank count; sizes stay moderate so a
// single iteration is dominated by the kernels rather than thread startup.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "hipkernels/dist.hpp"
#include "hipkernels/io/random_perm.hpp"
#include "hipkernels/ops.hpp"

namespace {

using namespace hipkernels;

CooMatrix random_coo(index_t m, index_t n, index_t nnz, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<index_t> rpick(0, m - 1);
  std::uniform_int_distribution<index_t> cpick(0, n - 1);
  CooMatrix coo;
  coo.nrows = m;
  coo.ncols = n;
  std::vector<char> used(static_cast<std::size_t>(m * n), 0);
  while (coo.nnz() < nnz) {
    const index_t i = rpick(rng);
    const index_t j = cpick(rng);
    char& slot = used[static_cast<std::size_t>(i * n + j)];
    if (slot) continue;
    slot = 1;
    coo.entries.push_back({i, j, static_cast<Value>(i + j + 1)});
  }
  return coo;
}

DistVector perm_vector(index_t n, std::uint64_t seed, const ProcGrid& grid,
                       VectorOrientation orientation) {
  const std::vector<index_t> v = random_permutation(n, seed);
  return DistVector::from_global(v, VectorLayout(grid, n, orientation));
}

void bm_permute(benchmark::State& state) {
  const int procs = static_cast<int>(state.range(0));
  const index_t n = 2048;
  const ProcGrid grid(procs);
  const DistMatrix a = distribute(random_coo(n, n, 128 * 1024, 31), grid);
  const DistVector pvec =
      perm_vector(n, 32, grid, VectorOrientation::by_grid_row);
  const DistVector qvec =
      perm_vector(n, 33, grid, VectorOrientation::by_grid_col);
  OpOptions options;
  options.nthreads = 2;
  for (auto _ : state) {
    DistMatrix out = permute(a, pvec, qvec, options);
    benchmark::DoNotOptimize(out.blocks.data());
  }
  state.SetItemsProcessed(state.iterations() * a.total_nnz());
}

void bm_extract(benchmark::State& state) {
  const int procs = static_cast<int>(state.range(0));
  const index_t n = 2048;
  const ProcGrid grid(procs);
  const DistMatrix a = distribute(random_coo(n, n, 128 * 1024, 41), grid);
  std::vector<index_t> head = random_permutation(n, 42);
  head.resize(static_cast<std::size_t>(n / 2));
  const DistVector rows = DistVector::from_global(
      head, VectorLayout(grid, n / 2, VectorOrientation::by_grid_row));
  const DistVector cols = DistVector::from_global(
      head, VectorLayout(grid, n / 2, VectorOrientation::by_grid_col));
  OpOptions options;
  options.nthreads = 2;
  for (auto _ : state) {
    DistMatrix out = extract(a, rows, cols, options);
    benchmark::DoNotOptimize(out.blocks.data());
  }
  state.SetItemsProcessed(state.iterations() * a.total_nnz());
}

void bm_assign(benchmark::State& state) {
  const int procs = static_cast<int>(state.range(0));
  const index_t n = 2048;
  const index_t bn = n / 4;
  const ProcGrid grid(procs);
  const DistMatrix a = distribute(random_coo(n, n, 128 * 1024, 51), grid);
  const DistMatrix b = distribute(random_coo(bn, bn, 16 * 1024, 52), grid);
  std::vector<index_t> head = random_permutation(n, 53);
  head.resize(static_cast<std::size_t>(bn));
  const DistVector rows = DistVector::from_global(
      head, VectorLayout(grid, bn, VectorOrientation::by_grid_row));
  const DistVector cols = DistVector::from_global(
      head, VectorLayout(grid, bn, VectorOrientation::by_grid_col));
  OpOptions options;
  options.nthreads = 2;
  for (auto _ : state) {
    DistMatrix out = assign(a, b, rows, cols, AddOp::arithmetic_sum, options);
    benchmark::DoNotOptimize(out.blocks.data());
  }
  state.SetItemsProcessed(state.iterations() * b.total_nnz());
}

BENCHMARK(bm_permute)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_extract)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_assign)->Arg(1)->Arg(4)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
