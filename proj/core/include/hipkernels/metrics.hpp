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

#include <filesystem>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "hipkernels/dist.hpp"
#include "hipkernels/types.hpp"

namespace hipkernels {

/// Instrumentation collected by one distributed operation.  Phase times
/// report the slowest rank per phase, mirroring how a barrier-synchronized
/// run is perceived; counters are summed over ranks.
struct PhaseMetrics {
  double gather_s = 0.0;    ///< index inversion, validation, band gathers
  double local_s = 0.0;     ///< send-buffer preparation
  double exchange_s = 0.0;  ///< the triple exchange itself
  double build_s = 0.0;     ///< sorting received triples and packing blocks
  double add_s = 0.0;       ///< elementwise combination (assignment only)
  std::vector<index_t> sent_per_rank;
  std::vector<index_t> recv_per_rank;
  index_t triples_exchanged = 0;
  double imbalance_before = std::numeric_limits<double>::quiet_NaN();
  double imbalance_after = std::numeric_limits<double>::quiet_NaN();
};

/// Ratio of the heaviest rank's nonzero count to the per-rank average.
/// 1.0 means perfectly balanced.  Throws EmptyMatrix when there are no
/// nonzeros to balance.
double load_imbalance(const DistMatrix& dm);

/// Column order of the metrics CSV; one row is appended per operation run.
inline constexpr std::string_view kMetricsCsvHeader =
    "op,matrix,procs,threads,seed,phase_gather_s,phase_local_s,"
    "phase_exchange_s,phase_build_s,phase_add_s,triples_exchanged,"
    "imbalance_before,imbalance_after";

/// Appends one row (writing the header first when the file is new or
/// empty).  `seed` is written verbatim and may be empty when index vectors
/// came from files.
void append_metrics_csv(const std::filesystem::path& path,
                        const std::string& op, const std::string& matrix,
                        int procs, int threads, const std::string& seed,
                        const PhaseMetrics& metrics);

}  // namespace hipkernels
