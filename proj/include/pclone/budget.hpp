#pragma once

// Enumeration budgets and the thread fan-out helper. Budgets guard the
// combinatorial searches; exceeding one raises BudgetError instead of
// running forever, so callers can distinguish "too big" from "wrong".
// Thread count 0 means: use PCLONE_THREADS if set, otherwise the
// hardware concurrency.

#include <cstdint>
#include <functional>

#include "pclone/core.hpp"

namespace pclone {

struct BudgetError : Error {
  using Error::Error;
};

inline void require_budget(bool cond, const std::string& msg) {
  if (!cond) throw BudgetError(msg);
}

struct Budget {
  std::uint64_t max_index_tuples = 100'000'000;  // maximal_gamma: t^s guard
  std::uint64_t max_multisets = 1'000'000;       // symmetric fast path
  std::uint64_t max_closure_members = 1u << 21;  // clone/str closures
  std::uint64_t max_witness_tuples = 100'000;    // stored witness cap
  int max_fingerprint_arity = 3;
  int threads = 0;
};

int resolve_threads(int requested);

// Splits [0, n) into contiguous chunks, one per task slot. fn(begin, end,
// slot) runs on worker threads; callers merge per-slot results in slot
// order, which keeps outputs independent of scheduling.
void parallel_chunks(
    std::uint64_t n, int threads,
    const std::function<void(std::uint64_t, std::uint64_t, int)>& fn);

}  // namespace pclone
