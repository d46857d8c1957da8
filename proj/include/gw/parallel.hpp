#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gw {

/// Runs body(r) for r in [0, count) on up to `workers` threads. Work items
/// must write only to their own slot; results never depend on scheduling.
template <typename Body>
void parallel_for(Eigen::Index count, unsigned workers, Body&& body) {
  if (workers <= 1 || count < 2) {
    for (Eigen::Index r = 0; r < count; ++r) body(r);
    return;
  }
  std::atomic<Eigen::Index> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&] {
    for (Eigen::Index r = next++; r < count; r = next++) {
      try {
        body(r);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  const auto thread_count =
      static_cast<unsigned>(std::min<Eigen::Index>(workers, count));
  {
    std::vector<std::jthread> threads;
    threads.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) threads.emplace_back(run);
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace gw
