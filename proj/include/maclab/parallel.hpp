#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace maclab {

inline int hardware_partitions() {
  return std::max(1u, std::thread::hardware_concurrency());
}

// Splits [0, count) into `partitions` contiguous chunks and runs
// fn(begin, end, partition) on each; chunk 0 runs on the calling thread.
// fn must not throw.
template <class Fn>
void parallel_for(std::size_t count, int partitions, Fn&& fn) {
  const std::size_t parts =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(partitions, 1)), 1, std::max<std::size_t>(count, 1));
  if (parts == 1) {
    fn(std::size_t{0}, count, std::size_t{0});
    return;
  }
  auto bounds = [&](std::size_t p) { return count * p / parts; };
  std::vector<std::jthread> workers;
  workers.reserve(parts - 1);
  for (std::size_t p = 1; p < parts; ++p)
    workers.emplace_back([&fn, b = bounds(p), e = bounds(p + 1), p] { fn(b, e, p); });
  fn(std::size_t{0}, bounds(1), std::size_t{0});
}

}  // namespace maclab
