#include "zdl/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <thread>

namespace zdl {

unsigned thread_count() {
  if (const char* env = std::getenv("ZDL_THREADS")) {
    unsigned n = 0;
    auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), n);
    if (ec == std::errc{} && n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) task(i);
    });
  }
}

Complex pairwise_reduce(std::vector<Complex> values) {
  if (values.empty()) return {};
  while (values.size() > 1) {
    std::size_t half = (values.size() + 1) / 2;
    for (std::size_t i = 0; i < values.size() / 2; ++i)
      values[i] = values[2 * i] + values[2 * i + 1];
    if (values.size() % 2 == 1) values[half - 1] = values.back();
    values.resize(half);
  }
  return values.front();
}

Complex chunked_sum(std::size_t first, std::size_t last,
                    const std::function<Complex(std::size_t)>& term, std::size_t chunk) {
  if (last <= first) return {};
  chunk = std::max<std::size_t>(chunk, 1);
  const std::size_t n_chunks = (last - first + chunk - 1) / chunk;
  std::vector<Complex> partial(n_chunks);
  parallel_for(n_chunks, [&](std::size_t c) {
    const std::size_t lo = first + c * chunk;
    const std::size_t hi = std::min(last, lo + chunk);
    Complex acc{};
    for (std::size_t i = lo; i < hi; ++i) acc += term(i);
    partial[c] = acc;
  });
  return pairwise_reduce(std::move(partial));
}

}  // namespace zdl
