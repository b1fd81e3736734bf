#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fairspread::detail {

/// Runs body(worker, begin, end) over contiguous chunks of [0, count).
/// Exceptions from any worker are rethrown on the calling thread.
template <class Body>
void parallel_chunks(std::size_t count, std::size_t workers, Body&& body) {
  workers = std::max<std::size_t>(1, std::min(workers, count));
  if (workers == 1) {
    body(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> threads;
    threads.reserve(workers);
    const std::size_t chunk = (count + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      if (begin >= end) break;
      threads.emplace_back([&, w, begin, end] {
        try {
          body(w, begin, end);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace fairspread::detail
