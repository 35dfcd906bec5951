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

#include "hipkernels/build.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "hipkernels/error.hpp"
#include "hipkernels/grid.hpp"
#include "parallel.hpp"

namespace hipkernels {

namespace {

/// Sorts `items` by cutting it into 4 x nthreads equal-size chunks, sorting
/// each chunk, and merging sorted runs pairwise until one remains.  Adjacent
/// runs stay adjacent, so every merge writes one contiguous range and the
/// rounds can run on all threads without coordination.
template <class T, class Less>
void chunked_sort(std::vector<T>& items, int nthreads, Less less) {
  if (nthreads < 1) {
    throw Error(Errc::invalid_argument, "nthreads must be at least 1");
  }
  const index_t n = static_cast<index_t>(items.size());
  if (n <= 1) return;

  const int nchunks = 4 * nthreads;
  std::vector<index_t> bounds(static_cast<std::size_t>(nchunks) + 1);
  for (int i = 0; i <= nchunks; ++i) {
    bounds[static_cast<std::size_t>(i)] = balanced_part_start(n, nchunks, i);
  }
  detail::run_on_threads(nthreads, [&](int t) {
    for (int chunk = t; chunk < nchunks; chunk += nthreads) {
      std::sort(items.begin() + bounds[static_cast<std::size_t>(chunk)],
                items.begin() + bounds[static_cast<std::size_t>(chunk) + 1],
                less);
    }
  });

  std::vector<T> scratch(items.size());
  std::vector<T>* src = &items;
  std::vector<T>* dst = &scratch;
  std::vector<index_t> runs = std::move(bounds);  // run boundaries
  while (runs.size() > 2) {
    const int npairs = static_cast<int>(runs.size() - 1) / 2;
    detail::run_on_threads(nthreads, [&](int t) {
      for (int i = t; i < npairs; i += nthreads) {
        const auto lo = static_cast<std::size_t>(runs[2 * static_cast<std::size_t>(i)]);
        const auto mid = static_cast<std::size_t>(runs[2 * static_cast<std::size_t>(i) + 1]);
        const auto hi = static_cast<std::size_t>(runs[2 * static_cast<std::size_t>(i) + 2]);
        std::merge(src->begin() + lo, src->begin() + mid, src->begin() + mid,
                   src->begin() + hi, dst->begin() + lo, less);
      }
    });
    std::vector<index_t> next;
    next.reserve(runs.size() / 2 + 2);
    for (std::size_t i = 0; i < runs.size(); i += 2) next.push_back(runs[i]);
    if (runs.size() % 2 == 0) {
      // Odd run count: the trailing run is carried over unmerged.
      std::copy(src->begin() + runs[runs.size() - 2], src->end(),
                dst->begin() + runs[runs.size() - 2]);
      next.push_back(runs.back());
    }
    runs = std::move(next);
    std::swap(src, dst);
  }
  if (src != &items) items = std::move(*src);
}

template <class T>
std::vector<T> concat_in_source_order(const std::vector<std::vector<T>>& recv) {
  std::size_t total = 0;
  for (const auto& part : recv) total += part.size();
  std::vector<T> flat;
  flat.reserve(total);
  for (const auto& part : recv) {
    flat.insert(flat.end(), part.begin(), part.end());
  }
  return flat;
}

}  // namespace

LocalDcsc build_local_matrix(const std::vector<std::vector<Triple>>& recv,
                             index_t nrows, index_t ncols, int nthreads) {
  std::vector<Triple> flat = concat_in_source_order(recv);
  chunked_sort(flat, nthreads, [](const Triple& a, const Triple& b) {
    return a.lcol != b.lcol ? a.lcol < b.lcol : a.lrow < b.lrow;
  });
  return LocalDcsc::from_sorted_triples(flat, nrows, ncols);
}

LocalDcsc build_local_matrix_resolving(
    const std::vector<std::vector<TaggedTriple>>& recv, index_t nrows,
    index_t ncols, AddOp op, int nthreads) {
  std::vector<TaggedTriple> flat = concat_in_source_order(recv);
  chunked_sort(flat, nthreads, [](const TaggedTriple& a, const TaggedTriple& b) {
    if (a.lcol != b.lcol) return a.lcol < b.lcol;
    if (a.lrow != b.lrow) return a.lrow < b.lrow;
    return a.origin < b.origin;  // existing entry sorts before incoming
  });

  std::vector<Triple> combined;
  combined.reserve(flat.size());
  for (std::size_t i = 0; i < flat.size();) {
    std::size_t j = i + 1;
    while (j < flat.size() && flat[j].lcol == flat[i].lcol &&
           flat[j].lrow == flat[i].lrow) {
      ++j;
    }
    const std::size_t width = j - i;
    if (width == 1) {
      combined.push_back({flat[i].lrow, flat[i].lcol, flat[i].val});
    } else if (width == 2 && flat[i].origin == 0 && flat[i + 1].origin == 1) {
      combined.push_back({flat[i].lrow, flat[i].lcol,
                          apply_addop(op, flat[i].val, flat[i + 1].val)});
    } else {
      throw Error(Errc::duplicate_coordinate,
                  "coordinate (" + std::to_string(flat[i].lrow) + "," +
                      std::to_string(flat[i].lcol) +
                      ") received more than once from the same side");
    }
    i = j;
  }
  return LocalDcsc::from_sorted_triples(combined, nrows, ncols);
}

}  // namespace hipkernels
