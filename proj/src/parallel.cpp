#include "ilap/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace ilap {

namespace {
std::atomic<unsigned> g_max_threads{0};
}

void set_max_threads(unsigned n) noexcept { g_max_threads = n; }

unsigned max_threads() noexcept {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  unsigned cap = g_max_threads.load();
  return cap == 0 ? hw : std::min(cap, hw);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(max_threads(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  constexpr std::size_t chunk = 64;
  auto run = [&] {
    for (;;) {
      std::size_t start = next.fetch_add(chunk);
      if (start >= n) return;
      std::size_t stop = std::min(n, start + chunk);
      for (std::size_t i = start; i < stop; ++i) body(i);
    }
  };
  std::vector<std::jthread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
}

}  // namespace ilap
