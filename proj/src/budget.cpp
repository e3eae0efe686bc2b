#include "pclone/budget.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include "pclone/core.hpp"

namespace pclone {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("PCLONE_THREADS")) {
    int v = std::atoi(env);
    require(v > 0, "PCLONE_THREADS must be a positive integer, got '" +
                       std::string(env) + "'");
    return v;
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? int(hw) : 1;
}

void parallel_chunks(
    std::uint64_t n, int threads,
    const std::function<void(std::uint64_t, std::uint64_t, int)>& fn) {
  int t = resolve_threads(threads);
  if (std::uint64_t(t) > n) t = int(n > 0 ? n : 1);
  if (t <= 1) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> workers;
  std::uint64_t chunk = (n + std::uint64_t(t) - 1) / std::uint64_t(t);
  for (int s = 0; s < t; ++s) {
    std::uint64_t begin = std::uint64_t(s) * chunk;
    std::uint64_t end = begin + chunk < n ? begin + chunk : n;
    if (begin >= end) break;
    workers.emplace_back([&fn, begin, end, s] { fn(begin, end, s); });
  }
  for (auto& w : workers) w.join();
}

}  // namespace pclone
