#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <utility>
#include <vector>

namespace ddps {

/// Static-chunked parallel loop: calls f(i) for i in [0, n).
///
/// Each index must write only to locations it owns; under that contract the
/// result is bitwise identical for every thread count, since chunking never
/// changes the arithmetic performed for a given i. The first exception thrown
/// by any worker is rethrown on the calling thread.
template <class F>
inline void parallel_for(std::int64_t n, int threads, F&& f) {
  if (n <= 0) return;
  const std::int64_t t =
      std::max<std::int64_t>(1, std::min<std::int64_t>(threads, n));
  if (t == 1) {
    for (std::int64_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  std::exception_ptr err;
  std::mutex err_mutex;
  for (std::int64_t k = 0; k < t; ++k) {
    const std::int64_t lo = n * k / t;
    const std::int64_t hi = n * (k + 1) / t;
    pool.emplace_back([&f, &err, &err_mutex, lo, hi] {
      try {
        for (std::int64_t i = lo; i < hi; ++i) f(i);
      } catch (...) {
        std::lock_guard<std::mutex> g(err_mutex);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace ddps
