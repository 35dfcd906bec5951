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

#pragma once

#include <cstdint>
#include <vector>

#include "hipkernels/types.hpp"

namespace hipkernels {

/// Uniform random permutation of [0, n), identical for the same (n, seed)
/// on every platform.  The generator is std::mt19937_64 seeded directly
/// with `seed`, and bounded draws use mask-and-reject (draw 64 bits, keep
/// the low bits covering the bound, reject values past it) rather than
/// std::uniform_int_distribution, whose output is not pinned by the
/// standard.  Shuffling is Fisher-Yates from the top index down.
std::vector<index_t> random_permutation(index_t n, std::uint64_t seed);

}  // namespace hipkernels
