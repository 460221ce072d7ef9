#pragma once

#include <algorithm>
#include <condition_variable>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace abc::detail {

inline std::uint64_t pick_block_size(std::uint64_t count, unsigned workers, std::uint64_t requested) {
  if (requested != 0) return requested;
  const std::uint64_t target = count / (std::uint64_t{workers} * 16);
  return std::clamp<std::uint64_t>(target, 1, 256);
}

// Splits [first, last] into contiguous blocks, evaluates compute(lo, hi) on a
// pool of workers and hands each result to consume() on the calling thread in
// ascending block order. At most 4 * workers blocks are in flight.
template <class Result, class Compute, class Consume>
void run_ordered_blocks(std::uint64_t first, std::uint64_t last, unsigned workers,
                        std::uint64_t block_size, Compute compute, Consume consume) {
  if (first > last) return;
  workers = std::max(1u, workers);
  const std::uint64_t count = last - first + 1;
  const std::uint64_t block = pick_block_size(count, workers, block_size);
  const std::uint64_t blocks = (count + block - 1) / block;
  auto bounds = [&](std::uint64_t i) {
    const std::uint64_t lo = first + i * block;
    return std::pair{lo, std::min(last, lo + block - 1)};
  };

  if (workers == 1 || blocks == 1) {
    for (std::uint64_t i = 0; i < blocks; ++i) {
      const auto [lo, hi] = bounds(i);
      consume(compute(lo, hi));
    }
    return;
  }

  const std::uint64_t window = 4ull * workers;
  std::vector<std::optional<Result>> slots(window);
  std::mutex mutex;
  std::condition_variable cv;
  std::uint64_t next_claim = 0;
  std::uint64_t next_emit = 0;
  bool stop = false;
  std::exception_ptr failure;

  auto work = [&] {
    for (;;) {
      std::uint64_t index;
      {
        std::unique_lock lock(mutex);
        cv.wait(lock, [&] { return stop || next_claim >= blocks || next_claim < next_emit + window; });
        if (stop || next_claim >= blocks) return;
        index = next_claim++;
      }
      try {
        const auto [lo, hi] = bounds(index);
        Result result = compute(lo, hi);
        std::lock_guard lock(mutex);
        slots[index % window] = std::move(result);
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        stop = true;
      }
      cv.notify_all();
    }
  };

  std::vector<std::jthread> pool;
  auto shutdown = [&] {
    {
      std::lock_guard lock(mutex);
      stop = true;
    }
    cv.notify_all();
    pool.clear();
  };
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);

  try {
    for (std::uint64_t e = 0; e < blocks; ++e) {
      Result result;
      {
        std::unique_lock lock(mutex);
        cv.wait(lock, [&] { return failure || slots[e % window].has_value(); });
        if (failure) break;
        result = std::move(*slots[e % window]);
        slots[e % window].reset();
        next_emit = e + 1;
      }
      cv.notify_all();
      consume(std::move(result));
    }
  } catch (...) {
    shutdown();
    throw;
  }
  shutdown();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace abc::detail
