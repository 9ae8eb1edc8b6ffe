#include "parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>

namespace memclust::detail {

std::size_t worker_threads() {
    std::size_t n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("MEMCLUST_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) n = std::min(n, static_cast<std::size_t>(cap));
    }
    return n;
}

double chunked_sum(std::size_t n, std::size_t chunk_size,
                   const std::function<double(std::size_t, std::size_t)>& partial) {
    if (n == 0) return 0.0;
    const std::size_t workers = worker_threads();
    if (workers == 1 || n <= chunk_size) return partial(0, n);
    // One chunk per worker unless that would go below the requested grain.
    const std::size_t per_worker = (n + workers - 1) / workers;
    chunk_size = std::max(chunk_size, per_worker);

    std::vector<std::future<double>> chunks;
    for (std::size_t lo = 0; lo < n; lo += chunk_size) {
        const std::size_t hi = std::min(lo + chunk_size, n);
        chunks.push_back(std::async(std::launch::deferred | std::launch::async,
                                    partial, lo, hi));
    }
    double total = 0.0;
    for (auto& c : chunks) total += c.get();
    return total;
}

}  // namespace memclust::detail
