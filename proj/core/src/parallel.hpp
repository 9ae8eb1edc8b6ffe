#ifndef MEMCLUST_SRC_PARALLEL_HPP
#define MEMCLUST_SRC_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <future>
#include <vector>

namespace memclust::detail {

/// Worker count: hardware concurrency capped by MEMCLUST_THREADS.
std::size_t worker_threads();

/// Splits [0, n) into fixed-size chunks, evaluates `partial` on each and
/// sums the results in chunk order, so the reduction is deterministic
/// regardless of the worker count.
double chunked_sum(std::size_t n, std::size_t chunk_size,
                   const std::function<double(std::size_t, std::size_t)>& partial);

}  // namespace memclust::detail

#endif
