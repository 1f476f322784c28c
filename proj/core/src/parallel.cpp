#include "frailhaz/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace frailhaz {

namespace {
std::atomic<unsigned> g_max_threads{0};  // 0 = auto

// Set while a worker is inside a parallel region; nested regions (for
// example the Monte-Carlo CI inside a parallel coverage study) then run
// sequentially instead of multiplying thread counts.
thread_local bool t_in_parallel_region = false;
}

void set_max_threads(unsigned n) noexcept { g_max_threads.store(n); }

unsigned max_threads() noexcept {
  unsigned n = g_max_threads.load();
  if (n == 0) n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : n;
}

void parallel_for_indexed(std::size_t n, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = static_cast<unsigned>(
      std::min<std::size_t>(max_threads(), n == 0 ? 1 : n));
  if (workers <= 1 || t_in_parallel_region) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }

  // Indices are claimed from a shared counter; since fn(i) writes only to its
  // own slot and derives its own RNG substream, the scheduling order cannot
  // affect the result.  The lowest-index exception is rethrown to keep error
  // reporting deterministic too.
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = n;
  std::exception_ptr error;

  auto worker = [&]() {
    t_in_parallel_region = true;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned t = 0; t < workers; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace frailhaz
