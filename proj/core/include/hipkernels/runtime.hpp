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

#include <algorithm>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <type_traits>
#include <typeindex>
#include <utility>
#include <vector>

#include "hipkernels/error.hpp"
#include "hipkernels/grid.hpp"

namespace hipkernels {

// Simulated multi-rank runtime.  run_ranks executes one program per rank on
// p concurrent threads; collectives are rendezvous points mediated by a
// shared Mediator.  Received buffers are always ordered by source rank id,
// and every collective result is a pure function of the participants'
// inputs, so rank scheduling cannot influence what a program observes.

enum class CollectiveKind { alltoallv, allgather };

namespace detail {

struct SlotBase {
  CollectiveKind kind;
  std::type_index type;
  std::vector<int> group;
  std::vector<bool> present;  // which group positions have arrived
  std::size_t arrived = 0;
  std::size_t picked = 0;
  bool ready = false;
  std::exception_ptr error;

  SlotBase(CollectiveKind k, std::type_index t, std::vector<int> g)
      : kind(k), type(t), group(std::move(g)), present(group.size(), false) {}
  virtual ~SlotBase() = default;
  /// Called once all participants have arrived, with the mediator lock held.
  virtual void complete() = 0;
};

template <class T>
struct AlltoallSlot final : SlotBase {
  // inputs[src][dst] as handed in; outputs[dst][src] after completion.
  std::vector<std::vector<std::vector<T>>> inputs;
  std::vector<std::vector<std::vector<T>>> outputs;

  AlltoallSlot(std::type_index t, std::vector<int> g)
      : SlotBase(CollectiveKind::alltoallv, t, std::move(g)),
        inputs(group.size()),
        outputs(group.size()) {}

  void complete() override {
    const std::size_t n = group.size();
    for (std::size_t dst = 0; dst < n; ++dst) {
      outputs[dst].resize(n);
      for (std::size_t src = 0; src < n; ++src) {
        outputs[dst][src] = std::move(inputs[src][dst]);
      }
    }
    inputs.clear();
  }
};

template <class T>
struct AllgatherSlot final : SlotBase {
  std::vector<std::vector<T>> inputs;  // by band position
  std::vector<T> gathered;

  AllgatherSlot(std::type_index t, std::vector<int> g)
      : SlotBase(CollectiveKind::allgather, t, std::move(g)),
        inputs(group.size()) {}

  void complete() override {
    std::size_t total = 0;
    for (const auto& piece : inputs) total += piece.size();
    gathered.reserve(total);
    for (auto& piece : inputs) {
      gathered.insert(gathered.end(), piece.begin(), piece.end());
      piece.clear();
    }
    inputs.clear();
  }
};

}  // namespace detail

/// Shared rendezvous point for all collectives of one run.  A collective
/// call names its participant group; the call blocks until every member of
/// the group has arrived with the same collective kind and element type.
/// Mismatched calls raise CollectiveMismatch, a participant returning from
/// its program while others still wait raises Deadlock, and a rank that
/// throws aborts everyone else's pending calls.
class Mediator {
 public:
  Mediator(int nranks, std::chrono::milliseconds watchdog)
      : nranks_(nranks), watchdog_(watchdog), exited_(nranks, false) {}

  Mediator(const Mediator&) = delete;
  Mediator& operator=(const Mediator&) = delete;

  template <class T>
  std::vector<std::vector<T>> alltoallv(int rank, std::uint64_t round,
                                        std::vector<std::vector<T>> send) {
    if (static_cast<int>(send.size()) != nranks_) {
      throw Error(Errc::invalid_argument,
                  "alltoallv needs one send buffer per rank");
    }
    std::vector<int> group(static_cast<std::size_t>(nranks_));
    for (int r = 0; r < nranks_; ++r) group[static_cast<std::size_t>(r)] = r;

    auto slot = arrive<detail::AlltoallSlot<T>>(
        rank, round, CollectiveKind::alltoallv, std::move(group),
        [&](detail::AlltoallSlot<T>& s, std::size_t pos) {
          s.inputs[pos] = std::move(send);
        });
    return pick_up(*slot, rank, [&](detail::AlltoallSlot<T>& s,
                                    std::size_t pos) {
      return std::move(s.outputs[pos]);
    });
  }

  template <class T>
  std::vector<T> allgather(int rank, std::uint64_t round,
                           std::vector<int> band, std::vector<T> piece) {
    if (band.empty() || !std::is_sorted(band.begin(), band.end()) ||
        std::adjacent_find(band.begin(), band.end()) != band.end()) {
      throw Error(Errc::invalid_argument,
                  "band must list distinct ranks in ascending order");
    }
    auto slot = arrive<detail::AllgatherSlot<T>>(
        rank, round, CollectiveKind::allgather, std::move(band),
        [&](detail::AllgatherSlot<T>& s, std::size_t pos) {
          s.inputs[pos] = std::move(piece);
        });
    return pick_up(*slot, rank,
                   [](detail::AllgatherSlot<T>& s, std::size_t) {
                     return s.gathered;  // every participant takes a copy
                   });
  }

  /// A rank's program returned (or threw).  Any collective still waiting on
  /// this rank can never complete; fail it.
  void note_exit(int rank) {
    std::lock_guard<std::mutex> lock(mu_);
    exited_[static_cast<std::size_t>(rank)] = true;
    if (aborted_) {
      // The run is already unwinding from a panic; pending collectives are
      // fallout, not deadlocks, and the panicking rank's error must win.
      cv_.notify_all();
      return;
    }
    for (auto& [key, slot] : slots_) {
      if (slot->ready || slot->error) continue;
      const auto pos = position_in(slot->group, rank);
      if (pos && !slot->present[*pos]) {
        fail_locked(*slot, Errc::deadlock,
                    "rank " + std::to_string(rank) +
                        " finished without joining a collective its group "
                        "is waiting on");
      }
    }
    cv_.notify_all();
  }

  /// A rank's program threw: wake everyone so the run can unwind.
  void note_panic(int /*rank*/) {
    std::lock_guard<std::mutex> lock(mu_);
    aborted_ = true;
    cv_.notify_all();
  }

 private:
  using SlotKey = std::pair<std::vector<int>, std::uint64_t>;

  static std::optional<std::size_t> position_in(const std::vector<int>& group,
                                                int rank) {
    auto it = std::lower_bound(group.begin(), group.end(), rank);
    if (it == group.end() || *it != rank) return std::nullopt;
    return static_cast<std::size_t>(it - group.begin());
  }

  void fail_locked(detail::SlotBase& slot, Errc code,
                   const std::string& message) {
    if (!slot.error) {
      slot.error = std::make_exception_ptr(Error(code, message));
    }
  }

  /// Registers one participant's input, completing the slot when it is the
  /// last to arrive.  `store` receives the typed slot and the caller's group
  /// position.  Returns the slot for the subsequent wait.
  template <class Slot, class Store>
  std::shared_ptr<Slot> arrive(int rank, std::uint64_t round,
                               CollectiveKind kind, std::vector<int> group,
                               Store&& store) {
    std::lock_guard<std::mutex> lock(mu_);
    if (aborted_) {
      throw Error(Errc::aborted, "run aborted by another rank");
    }
    const auto pos = position_in(group, rank);
    if (!pos) {
      throw Error(Errc::invalid_argument,
                  "rank " + std::to_string(rank) +
                      " called a collective on a group it is not part of");
    }

    SlotKey key{group, round};
    std::shared_ptr<detail::SlotBase> base;
    if (auto it = slots_.find(key); it != slots_.end()) {
      base = it->second;
    } else {
      base = std::make_shared<Slot>(std::type_index(typeid(Slot)),
                                    std::move(group));
      slots_.emplace(std::move(key), base);
    }

    auto typed = std::dynamic_pointer_cast<Slot>(base);
    if (!typed || base->kind != kind) {
      fail_locked(*base, Errc::collective_mismatch,
                  "ranks called different collectives in the same round");
      cv_.notify_all();
      std::rethrow_exception(base->error);
    }
    if (base->error) std::rethrow_exception(base->error);
    // A member that already returned from its program can never arrive here.
    for (std::size_t i = 0; i < base->group.size(); ++i) {
      if (!base->present[i] &&
          exited_[static_cast<std::size_t>(base->group[i])]) {
        fail_locked(*base, Errc::deadlock,
                    "rank " + std::to_string(base->group[i]) +
                        " already finished; collective cannot complete");
        cv_.notify_all();
        std::rethrow_exception(base->error);
      }
    }

    store(*typed, *pos);
    base->present[*pos] = true;
    ++base->arrived;
    if (base->arrived == base->group.size()) {
      base->complete();
      base->ready = true;
      cv_.notify_all();
    }
    return typed;
  }

  /// Blocks until the slot completes, then extracts this participant's
  /// result.  The last participant to leave erases the slot.
  template <class Slot, class Take>
  auto pick_up(Slot& slot, int rank, Take&& take) {
    std::unique_lock<std::mutex> lock(mu_);
    while (!slot.ready && !slot.error && !aborted_) {
      if (cv_.wait_for(lock, watchdog_) == std::cv_status::timeout &&
          !slot.ready && !slot.error && !aborted_) {
        fail_locked(slot, Errc::deadlock,
                    "collective timed out waiting for participants");
        cv_.notify_all();
      }
    }
    if (slot.error) std::rethrow_exception(slot.error);
    if (!slot.ready) {
      throw Error(Errc::aborted, "run aborted by another rank");
    }
    const auto pos = position_in(slot.group, rank);
    auto result = take(slot, *pos);
    if (++slot.picked == slot.group.size()) {
      slots_.erase({slot.group, find_round_of(slot)});
    }
    return result;
  }

  /// Reverse lookup of a slot's round for erasure (slots are few).
  std::uint64_t find_round_of(const detail::SlotBase& slot) const {
    for (const auto& [key, value] : slots_) {
      if (value.get() == &slot) return key.second;
    }
    return 0;  // unreachable while the slot is registered
  }

  int nranks_;
  std::chrono::milliseconds watchdog_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::map<SlotKey, std::shared_ptr<detail::SlotBase>> slots_;
  std::vector<bool> exited_;
  bool aborted_ = false;
};

/// Per-rank handle passed to rank programs.  Collectives are methods so a
/// program never sees the mediator directly.
class RankContext {
 public:
  RankContext(int rank, ProcGrid grid, Mediator* mediator)
      : rank_(rank), grid_(grid), mediator_(mediator) {}

  int rank() const { return rank_; }
  int nprocs() const { return grid_.nprocs(); }
  const ProcGrid& grid() const { return grid_; }
  int row() const { return grid_.coord_of(rank_).r; }
  int col() const { return grid_.coord_of(rank_).c; }

  /// Personalized exchange: send[d] goes to rank d; the result holds one
  /// buffer per source rank, in source-rank order.
  template <class T>
  std::vector<std::vector<T>> alltoallv(std::vector<std::vector<T>> send) {
    return mediator_->alltoallv<T>(rank_, next_round(all_ranks()),
                                   std::move(send));
  }

  /// Gathers one piece from every rank of `band` (ascending rank ids, this
  /// rank included); everyone receives the concatenation in band order.
  template <class T>
  std::vector<T> allgather_band(std::vector<int> band, std::vector<T> piece) {
    const std::uint64_t round = next_round(band);
    return mediator_->allgather<T>(rank_, round, std::move(band),
                                   std::move(piece));
  }

 private:
  std::vector<int> all_ranks() const {
    std::vector<int> group(static_cast<std::size_t>(grid_.nprocs()));
    for (int r = 0; r < grid_.nprocs(); ++r) group[static_cast<std::size_t>(r)] = r;
    return group;
  }

  /// Collectives on the same group are matched in call order; the counter
  /// keeps consecutive rendezvous on one group apart.
  std::uint64_t next_round(const std::vector<int>& group) {
    return rounds_[group]++;
  }

  int rank_;
  ProcGrid grid_;
  Mediator* mediator_;
  std::map<std::vector<int>, std::uint64_t> rounds_;
};

struct RunOptions {
  /// Upper bound on how long a collective waits before the run is declared
  /// deadlocked.
  std::chrono::milliseconds watchdog{std::chrono::seconds(30)};
};

namespace detail {

inline std::exception_ptr choose_run_error(
    const std::vector<std::exception_ptr>& errors) {
  // Prefer a rank's own failure over the secondary Aborted unwinding that
  // other ranks observe; lowest rank id wins for determinism.
  for (const auto& err : errors) {
    if (!err) continue;
    try {
      std::rethrow_exception(err);
    } catch (const Error& e) {
      if (e.code() != Errc::aborted) return err;
    } catch (...) {
      return err;
    }
  }
  for (const auto& err : errors) {
    if (err) return err;
  }
  return nullptr;
}

}  // namespace detail

/// Runs `program` once per rank on p concurrent threads and returns the
/// per-rank results ordered by rank id.  If any rank throws, the whole run
/// unwinds and the failing rank's error is rethrown.
template <class Fn>
auto run_ranks(int nprocs, Fn&& program, RunOptions options = {}) {
  using R = std::invoke_result_t<Fn&, RankContext&>;
  const ProcGrid grid(nprocs);
  Mediator mediator(nprocs, options.watchdog);

  constexpr bool void_result = std::is_void_v<R>;
  using Stored = std::conditional_t<void_result, char, R>;
  std::vector<std::optional<Stored>> results(static_cast<std::size_t>(nprocs));
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(nprocs));

  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(nprocs));
  for (int rank = 0; rank < nprocs; ++rank) {
    threads.emplace_back([&, rank] {
      RankContext ctx(rank, grid, &mediator);
      try {
        if constexpr (void_result) {
          program(ctx);
          results[static_cast<std::size_t>(rank)].emplace(0);
        } else {
          results[static_cast<std::size_t>(rank)].emplace(program(ctx));
        }
      } catch (...) {
        errors[static_cast<std::size_t>(rank)] = std::current_exception();
        mediator.note_panic(rank);
      }
      mediator.note_exit(rank);
    });
  }
  for (auto& t : threads) t.join();

  if (auto err = detail::choose_run_error(errors)) {
    std::rethrow_exception(err);
  }
  if constexpr (void_result) {
    return;
  } else {
    std::vector<R> out;
    out.reserve(static_cast<std::size_t>(nprocs));
    for (auto& r : results) out.push_back(std::move(*r));
    return out;
  }
}

}  // namespace hipkernels
