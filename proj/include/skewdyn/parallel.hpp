#ifndef SKEWDYN_PARALLEL_HPP
#define SKEWDYN_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace skewdyn {

// Static-stripe parallel loop.  Each index is processed exactly once by a
// deterministic function of the index alone, so results do not depend on
// the number of workers.
template <typename Fn>
void parallel_map(std::size_t count, int threads, Fn fn) {
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::size_t n_workers = std::min<std::size_t>(threads, count);
  std::vector<std::thread> pool;
  pool.reserve(n_workers);
  for (std::size_t w = 0; w < n_workers; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < count; i += n_workers) fn(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

}  // namespace skewdyn

#endif
