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
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hipkernels/dist.hpp"
#include "hipkernels/error.hpp"
#include "hipkernels/io/index_io.hpp"
#include "hipkernels/io/matrix_market.hpp"
#include "hipkernels/io/random_perm.hpp"
#include "hipkernels/log.hpp"
#include "hipkernels/metrics.hpp"
#include "hipkernels/ops.hpp"

namespace hk = hipkernels;

namespace {

/// Bad flag combinations detected past CLI11's own parsing; exits with 2
/// like any other usage problem.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Args {
  std::string op;
  std::string matrix;
  std::string submatrix;
  std::string pvec_file;
  std::string qvec_file;
  std::string rperm_file;
  std::string cperm_file;
  std::optional<std::uint64_t> seed;
  std::optional<hk::index_t> rows_count;
  std::optional<hk::index_t> cols_count;
  int procs = 1;
  int threads = 1;
  std::string addop = "second";
  std::string output;
  std::string metrics_path;
  int repeat = 3;
};

hk::AddOp parse_addop(const std::string& name) {
  if (name == "sum") return hk::AddOp::arithmetic_sum;
  if (name == "second") return hk::AddOp::select_second;
  if (name == "or") return hk::AddOp::logical_or;
  throw UsageError("--addop must be one of sum, second, or");
}

/// Full-length permutation vector for one axis: read from `file` when
/// given, otherwise generated from the seed plus the axis offset.  The
/// offsets are fixed: pvec uses seed, qvec seed+1, rperm seed+2, cperm
/// seed+3, so one --seed pins every generated vector of a run.
std::vector<hk::index_t> full_perm(const std::string& file, hk::index_t length,
                                   const std::optional<std::uint64_t>& seed,
                                   std::uint64_t offset, const char* flag) {
  if (!file.empty()) return hk::read_index_vector(file, length);
  if (seed) return hk::random_permutation(length, *seed + offset);
  throw UsageError(std::string("provide ") + flag + " or --seed");
}

/// Selection vector (distinct indices into [0, space)): file contents, or
/// the first `count` entries of a seeded random permutation.  `count`
/// defaults to a tenth of the space, at least one entry when the space is
/// nonempty.
std::vector<hk::index_t> selection(const std::string& file, hk::index_t space,
                                   std::optional<hk::index_t> count,
                                   const std::optional<std::uint64_t>& seed,
                                   std::uint64_t offset, const char* flag) {
  if (!file.empty()) return hk::read_index_vector(file, space);
  if (seed) {
    const hk::index_t fallback =
        space > 0 ? std::max<hk::index_t>(space / 10, 1) : 0;
    const hk::index_t want = count.value_or(fallback);
    if (want < 0 || want > space) {
      throw UsageError("selection length " + std::to_string(want) +
                       " outside 0.." + std::to_string(space));
    }
    std::vector<hk::index_t> perm =
        hk::random_permutation(space, *seed + offset);
    perm.resize(static_cast<std::size_t>(want));
    return perm;
  }
  throw UsageError(std::string("provide ") + flag + " or --seed");
}

hk::DistVector make_dist(const std::vector<hk::index_t>& values,
                         const hk::ProcGrid& grid) {
  const hk::VectorLayout layout(grid, static_cast<hk::index_t>(values.size()));
  return hk::DistVector::from_global(values, layout);
}

/// Runs the requested operation once and returns the result.  `pm` is
/// filled with the run's phase times and counters.
hk::DistMatrix run_operation(const Args& args, const std::string& op,
                             const hk::ProcGrid& grid, const hk::DistMatrix& a,
                             hk::PhaseMetrics& pm) {
  hk::OpOptions options;
  options.nthreads = args.threads;
  options.metrics = &pm;

  if (op == "permute") {
    const auto p = full_perm(args.pvec_file, a.nrows(), args.seed, 0, "--pvec");
    const auto q = full_perm(args.qvec_file, a.ncols(), args.seed, 1, "--qvec");
    return hk::permute(a, make_dist(p, grid), make_dist(q, grid), options);
  }
  if (op == "extract") {
    const auto p = selection(args.pvec_file, a.nrows(), args.rows_count,
                             args.seed, 0, "--pvec");
    const auto q = selection(args.qvec_file, a.ncols(), args.cols_count,
                             args.seed, 1, "--qvec");
    return hk::extract(a, make_dist(p, grid), make_dist(q, grid), options);
  }
  if (op == "assign" || op == "assign-perm") {
    if (args.submatrix.empty()) {
      throw UsageError("--submatrix is required for " + op);
    }
    const hk::CooMatrix bcoo = hk::read_matrix_market(args.submatrix);
    const hk::DistMatrix b = hk::distribute(bcoo, grid);
    const auto p = selection(args.pvec_file, a.nrows(),
                             std::optional<hk::index_t>(b.nrows()), args.seed,
                             0, "--pvec");
    const auto q = selection(args.qvec_file, a.ncols(),
                             std::optional<hk::index_t>(b.ncols()), args.seed,
                             1, "--qvec");
    const hk::AddOp op_kind = parse_addop(args.addop);
    if (op == "assign") {
      return hk::assign(a, b, make_dist(p, grid), make_dist(q, grid), op_kind,
                        options);
    }
    const auto rp =
        full_perm(args.rperm_file, a.nrows(), args.seed, 2, "--rperm");
    const auto cp =
        full_perm(args.cperm_file, a.ncols(), args.seed, 3, "--cperm");
    return hk::assign_permute(a, b, make_dist(p, grid), make_dist(q, grid),
                              make_dist(rp, grid), make_dist(cp, grid),
                              op_kind, options);
  }
  throw UsageError("unknown operation " + op);
}

void maybe_append_metrics(const Args& args, const std::string& op,
                          const hk::PhaseMetrics& pm) {
  if (args.metrics_path.empty()) return;
  const std::string seed_text =
      args.seed ? std::to_string(*args.seed) : std::string();
  hk::append_metrics_csv(args.metrics_path, op, args.matrix, args.procs,
                         args.threads, seed_text, pm);
}

int run(const Args& args) {
  const hk::ProcGrid grid(args.procs);
  const hk::CooMatrix coo = hk::read_matrix_market(args.matrix);
  hk::log_line(hk::LogLevel::info,
               "loaded " + args.matrix + ": " + std::to_string(coo.nrows) +
                   "x" + std::to_string(coo.ncols) + ", " +
                   std::to_string(coo.nnz()) + " nonzeros");
  const hk::DistMatrix a = hk::distribute(coo, grid);

  if (args.op == "imbalance") {
    std::printf("%.6f\n", hk::load_imbalance(a));
    return 0;
  }

  if (args.op == "bench") {
    if (args.metrics_path.empty()) {
      throw UsageError("bench requires --metrics");
    }
    const std::string op = args.submatrix.empty() ? "permute" : "assign";
    for (int r = 0; r < args.repeat; ++r) {
      hk::PhaseMetrics pm;
      const hk::DistMatrix result = run_operation(args, op, grid, a, pm);
      maybe_append_metrics(args, op, pm);
      hk::log_line(hk::LogLevel::info,
                   "bench run " + std::to_string(r + 1) + "/" +
                       std::to_string(args.repeat) + ": exchanged " +
                       std::to_string(pm.triples_exchanged) + " triples");
      if (r + 1 == args.repeat && !args.output.empty()) {
        hk::write_matrix_market(result, args.output);
      }
    }
    return 0;
  }

  hk::PhaseMetrics pm;
  const hk::DistMatrix result = run_operation(args, args.op, grid, a, pm);
  hk::log_line(hk::LogLevel::info,
               args.op + ": exchanged " +
                   std::to_string(pm.triples_exchanged) + " triples, result " +
                   std::to_string(result.total_nnz()) + " nonzeros");
  if (hk::log_enabled(hk::LogLevel::debug)) {
    const auto per_rank = result.nnz_per_rank();
    for (std::size_t r = 0; r < per_rank.size(); ++r) {
      hk::log_line(hk::LogLevel::debug,
                   "rank " + std::to_string(r) + " holds " +
                       std::to_string(per_rank[r]) + " nonzeros");
    }
  }
  if (!args.output.empty()) {
    hk::write_matrix_market(result, args.output);
  }
  maybe_append_metrics(args, args.op, pm);
  return 0;
}

void add_common_flags(CLI::App* cmd, Args& args, bool needs_vectors) {
  cmd->add_option("--matrix", args.matrix, "Input matrix (Matrix Market)")
      ->required();
  cmd->add_option("--procs", args.procs,
                  "Number of simulated ranks (a perfect square)")
      ->default_val(1);
  if (needs_vectors) {
    cmd->add_option("--threads", args.threads, "Worker threads per rank")
        ->default_val(1);
    cmd->add_option("--pvec", args.pvec_file, "Row index vector file");
    cmd->add_option("--qvec", args.qvec_file, "Column index vector file");
    cmd->add_option("--seed", args.seed,
                    "Generate missing index vectors from this seed "
                    "(pvec: seed, qvec: seed+1, rperm: seed+2, cperm: "
                    "seed+3)");
    cmd->add_option("--output", args.output, "Write the result here");
    cmd->add_option("--metrics", args.metrics_path,
                    "Append one CSV row per run here");
  }
}

}  // namespace

int main(int argc, char** argv) {
  Args args;
  CLI::App app{
      "Distributed sparse matrix indexing (permute, extract, assign) on a "
      "simulated process grid"};
  app.require_subcommand(1);

  CLI::App* permute_cmd =
      app.add_subcommand("permute", "Apply row/column permutations");
  add_common_flags(permute_cmd, args, true);

  CLI::App* extract_cmd =
      app.add_subcommand("extract", "Extract a submatrix");
  add_common_flags(extract_cmd, args, true);
  extract_cmd->add_option("--rows", args.rows_count,
                          "Seeded row selection length (default: a tenth)");
  extract_cmd->add_option("--cols", args.cols_count,
                          "Seeded column selection length");

  CLI::App* assign_cmd =
      app.add_subcommand("assign", "Assign a submatrix into the matrix");
  add_common_flags(assign_cmd, args, true);
  assign_cmd->add_option("--submatrix", args.submatrix, "The matrix to write")
      ->required();
  assign_cmd->add_option("--addop", args.addop,
                         "Combiner at positions already stored")
      ->check(CLI::IsMember({"sum", "second", "or"}))
      ->default_val("second");

  CLI::App* fused_cmd = app.add_subcommand(
      "assign-perm", "Assign and permute in one exchange round");
  add_common_flags(fused_cmd, args, true);
  fused_cmd->add_option("--submatrix", args.submatrix, "The matrix to write")
      ->required();
  fused_cmd->add_option("--addop", args.addop,
                        "Combiner at positions already stored")
      ->check(CLI::IsMember({"sum", "second", "or"}))
      ->default_val("second");
  fused_cmd->add_option("--rperm", args.rperm_file,
                        "Row permutation vector file");
  fused_cmd->add_option("--cperm", args.cperm_file,
                        "Column permutation vector file");

  CLI::App* imbalance_cmd = app.add_subcommand(
      "imbalance", "Print the load imbalance ratio of the distributed matrix");
  add_common_flags(imbalance_cmd, args, false);

  CLI::App* bench_cmd = app.add_subcommand(
      "bench",
      "Repeat an operation (permute, or assign with --submatrix), appending "
      "one metrics row per run");
  add_common_flags(bench_cmd, args, true);
  bench_cmd->add_option("--submatrix", args.submatrix, "The matrix to write");
  bench_cmd->add_option("--addop", args.addop,
                        "Combiner at positions already stored")
      ->check(CLI::IsMember({"sum", "second", "or"}))
      ->default_val("second");
  bench_cmd->add_option("--repeat", args.repeat, "Number of runs")
      ->default_val(3);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  args.op = app.get_subcommands().front()->get_name();

  try {
    return run(args);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const hk::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
