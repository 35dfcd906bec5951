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

#include "hipkernels/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "hipkernels/error.hpp"

namespace hipkernels {

double load_imbalance(const DistMatrix& dm) {
  const index_t total = dm.total_nnz();
  if (total == 0) {
    throw Error(Errc::empty_matrix,
                "load imbalance is undefined for a matrix with no nonzeros");
  }
  index_t heaviest = 0;
  for (const LocalDcsc& block : dm.blocks) {
    heaviest = std::max(heaviest, block.nnz());
  }
  const double average =
      static_cast<double>(total) / static_cast<double>(dm.blocks.size());
  return static_cast<double>(heaviest) / average;
}

void append_metrics_csv(const std::filesystem::path& path,
                        const std::string& op, const std::string& matrix,
                        int procs, int threads, const std::string& seed,
                        const PhaseMetrics& metrics) {
  const bool need_header =
      !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) {
    throw Error(Errc::io_error, "cannot open " + path.string() + " to append");
  }
  if (need_header) {
    out << kMetricsCsvHeader << '\n';
  }
  auto fmt = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::string(buf);
  };
  out << op << ',' << matrix << ',' << procs << ',' << threads << ',' << seed
      << ',' << fmt(metrics.gather_s) << ',' << fmt(metrics.local_s) << ','
      << fmt(metrics.exchange_s) << ',' << fmt(metrics.build_s) << ','
      << fmt(metrics.add_s) << ',' << metrics.triples_exchanged << ','
      << fmt(metrics.imbalance_before) << ',' << fmt(metrics.imbalance_after)
      << '\n';
  if (!out) {
    throw Error(Errc::io_error, "failed writing to " + path.string());
  }
}

}  // namespace hipkernels
