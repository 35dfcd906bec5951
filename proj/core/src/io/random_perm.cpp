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

#include "hipkernels/io/random_perm.hpp"

#include <numeric>
#include <random>
#include <utility>

#include "hipkernels/error.hpp"

namespace hipkernels {

namespace {

/// Uniform draw from [0, bound] without std::uniform_int_distribution,
/// whose mapping from generator output is implementation-defined.
std::uint64_t bounded_draw(std::mt19937_64& gen, std::uint64_t bound) {
  if (bound == 0) return 0;
  std::uint64_t mask = bound;
  mask |= mask >> 1;
  mask |= mask >> 2;
  mask |= mask >> 4;
  mask |= mask >> 8;
  mask |= mask >> 16;
  mask |= mask >> 32;
  std::uint64_t draw = 0;
  do {
    draw = gen() & mask;
  } while (draw > bound);
  return draw;
}

}  // namespace

std::vector<index_t> random_permutation(index_t n, std::uint64_t seed) {
  if (n < 0) {
    throw Error(Errc::invalid_argument, "permutation length must be >= 0");
  }
  std::vector<index_t> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), index_t{0});
  std::mt19937_64 gen(seed);
  for (index_t i = n - 1; i > 0; --i) {
    const auto j = static_cast<index_t>(
        bounded_draw(gen, static_cast<std::uint64_t>(i)));
    std::swap(perm[static_cast<std::size_t>(i)],
              perm[static_cast<std::size_t>(j)]);
  }
  return perm;
}

}  // namespace hipkernels
