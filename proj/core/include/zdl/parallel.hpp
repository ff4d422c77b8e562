#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "zdl/types.hpp"

namespace zdl {

/// Worker count: ZDL_THREADS when set to a positive integer, else the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Runs task(i) for i in [0, count) on up to thread_count() workers.
/// Tasks must write only to their own slot of any shared output.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& task);

inline constexpr std::size_t kDefaultChunk = 1u << 16;

/// Sums term(i) for i in [first, last). The range is cut into fixed-size
/// chunks, each chunk is summed left to right, and chunk partials are
/// combined by a fixed pairwise tree, so the result is bit-identical for a
/// given chunk size regardless of the worker count.
Complex chunked_sum(std::size_t first, std::size_t last,
                    const std::function<Complex(std::size_t)>& term,
                    std::size_t chunk = kDefaultChunk);

/// Pairwise (tree) reduction in index order.
Complex pairwise_reduce(std::vector<Complex> values);

}  // namespace zdl
