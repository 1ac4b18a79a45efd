#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

namespace splab {

/// Worker count for per-prime loops. Zero means "use SPLAB_THREADS, else 1".
struct Parallelism {
  unsigned threads = 0;

  unsigned resolved() const {
    if (threads > 0) return threads;
    if (const char* env = std::getenv("SPLAB_THREADS")) {
      try {
        const long n = std::stol(env);
        if (n > 0) return static_cast<unsigned>(n);
      } catch (const std::exception&) {
      }
    }
    return 1;
  }
};

/// Applies fn to every item and returns the results in item order, so the
/// output does not depend on scheduling. The first exception (by item index)
/// is rethrown after all workers join.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, Parallelism par, Fn fn) {
  using R = std::invoke_result_t<Fn&, const T&>;
  std::vector<R> out(items.size());
  const unsigned workers = std::max(1u, std::min<unsigned>(par.resolved(), static_cast<unsigned>(items.size())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::size_t err_index = items.size();
  std::exception_ptr err;
  constexpr std::size_t chunk = 16;
  auto work = [&] {
    for (;;) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= items.size()) return;
      const std::size_t end = std::min(items.size(), begin + chunk);
      for (std::size_t i = begin; i < end; ++i) {
        try {
          out[i] = fn(items[i]);
        } catch (...) {
          std::lock_guard lock(err_mu);
          if (i < err_index) {
            err_index = i;
            err = std::current_exception();
          }
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace splab
