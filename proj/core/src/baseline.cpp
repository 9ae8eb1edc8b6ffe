#include "memclust/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <stdexcept>

#include "parallel.hpp"

namespace memclust {
namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double d = a[j] - b[j];
        acc += d * d;
    }
    return acc;
}

std::vector<std::vector<double>> seed_kmeanspp(
    const std::vector<std::vector<double>>& inputs, std::size_t k,
    std::mt19937_64& rng) {
    const std::size_t m = inputs.size();
    std::vector<std::vector<double>> centroids;
    centroids.reserve(k);

    std::uniform_int_distribution<std::size_t> first(0, m - 1);
    centroids.push_back(inputs[first(rng)]);

    std::vector<double> d2(m);
    for (std::size_t c = 1; c < k; ++c) {
        double total = 0.0;
        for (std::size_t p = 0; p < m; ++p) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& cen : centroids) best = std::min(best, sq_dist(inputs[p], cen));
            d2[p] = best;
            total += best;
        }
        std::size_t chosen;
        if (total <= 0.0) {
            chosen = first(rng);  // all points already covered exactly
        } else {
            std::uniform_real_distribution<double> u(0.0, total);
            double r = u(rng);
            chosen = m - 1;
            for (std::size_t p = 0; p < m; ++p) {
                r -= d2[p];
                if (r <= 0.0) { chosen = p; break; }
            }
        }
        centroids.push_back(inputs[chosen]);
    }
    return centroids;
}

KMeansResult lloyd(const std::vector<std::vector<double>>& inputs,
                   const KMeansConfig& cfg, std::uint64_t seed) {
    const std::size_t m = inputs.size();
    const std::size_t dim = inputs.front().size();
    std::mt19937_64 rng(seed);

    KMeansResult r;
    r.centroids = seed_kmeanspp(inputs, cfg.k, rng);
    r.assignments.assign(m, 0);

    for (int iter = 0; iter < cfg.max_iters; ++iter) {
        // Assignment step.
        double inertia = 0.0;
        for (std::size_t p = 0; p < m; ++p) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t arg = 0;
            for (std::size_t i = 0; i < cfg.k; ++i) {
                const double d = sq_dist(inputs[p], r.centroids[i]);
                if (d < best) { best = d; arg = i; }
            }
            r.assignments[p] = arg;
            inertia += best;
        }
        r.inertia = inertia;
        r.inertia_trace.push_back(inertia);

        // Update step.
        std::vector<std::vector<double>> next(cfg.k, std::vector<double>(dim, 0.0));
        std::vector<std::size_t> counts(cfg.k, 0);
        for (std::size_t p = 0; p < m; ++p) {
            ++counts[r.assignments[p]];
            const auto& u = inputs[p];
            auto& c = next[r.assignments[p]];
            for (std::size_t j = 0; j < dim; ++j) c[j] += u[j];
        }
        for (std::size_t i = 0; i < cfg.k; ++i) {
            if (counts[i] == 0) {
                // Reseed an empty cluster to the point farthest from its
                // current centroid.
                std::size_t far = 0;
                double far_d = -1.0;
                for (std::size_t p = 0; p < m; ++p) {
                    const double d = sq_dist(inputs[p], r.centroids[r.assignments[p]]);
                    if (d > far_d) { far_d = d; far = p; }
                }
                next[i] = inputs[far];
            } else {
                for (std::size_t j = 0; j < dim; ++j)
                    next[i][j] /= static_cast<double>(counts[i]);
            }
        }

        double movement = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < cfg.k; ++i) {
            movement += std::sqrt(sq_dist(next[i], r.centroids[i]));
            double norm = 0.0;
            for (double v : r.centroids[i]) norm += v * v;
            scale += std::sqrt(norm);
        }
        r.centroids = std::move(next);
        if (movement <= cfg.tolerance * std::max(scale, 1.0)) break;
    }

    // Final assignments/inertia for the converged centroids.
    double inertia = 0.0;
    for (std::size_t p = 0; p < m; ++p) {
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t i = 0; i < cfg.k; ++i) {
            const double d = sq_dist(inputs[p], r.centroids[i]);
            if (d < best) { best = d; arg = i; }
        }
        r.assignments[p] = arg;
        inertia += best;
    }
    r.inertia = inertia;
    r.inertia_trace.push_back(inertia);
    return r;
}

}  // namespace

void KMeansConfig::validate() const {
    if (k < 1) throw std::invalid_argument("KMeansConfig: k < 1");
    if (max_iters < 1) throw std::invalid_argument("KMeansConfig: max_iters < 1");
    if (restarts < 1) throw std::invalid_argument("KMeansConfig: restarts < 1");
    if (tolerance < 0.0) throw std::invalid_argument("KMeansConfig: tolerance < 0");
}

KMeansResult kmeans(const std::vector<std::vector<double>>& inputs,
                    const KMeansConfig& config) {
    config.validate();
    if (inputs.size() < config.k)
        throw std::invalid_argument("kmeans: fewer inputs than clusters");
    const std::size_t dim = inputs.front().size();
    for (const auto& u : inputs)
        if (u.size() != dim)
            throw std::invalid_argument("kmeans: inputs have mixed dimensions");

    // Restart seeds drawn up front so restarts can run in parallel while
    // selection stays deterministic (lowest inertia, ties by index).
    std::mt19937_64 seeder(config.seed);
    std::vector<std::uint64_t> seeds(config.restarts);
    for (auto& s : seeds) s = seeder();

    std::vector<std::future<KMeansResult>> runs;
    runs.reserve(config.restarts);
    for (int r = 0; r < config.restarts; ++r)
        runs.push_back(std::async(detail::worker_threads() > 1
                                      ? std::launch::async
                                      : std::launch::deferred,
                                  lloyd, std::cref(inputs), std::cref(config),
                                  seeds[r]));
    KMeansResult best;
    bool have = false;
    for (auto& run : runs) {
        KMeansResult r = run.get();
        if (!have || r.inertia < best.inertia) {
            best = std::move(r);
            have = true;
        }
    }
    return best;
}

double cost_l1(const std::vector<std::vector<double>>& centroids,
               const std::vector<std::vector<double>>& inputs) {
    if (centroids.empty()) throw std::invalid_argument("cost_l1: no centroids");
    const std::size_t dim = centroids.front().size();
    for (const auto& c : centroids)
        if (c.size() != dim) throw std::invalid_argument("cost_l1: mixed dimensions");

    auto partial = [&](std::size_t lo, std::size_t hi) {
        double sum = 0.0;
        for (std::size_t p = lo; p < hi; ++p) {
            const auto& u = inputs[p];
            if (u.size() != dim)
                throw std::invalid_argument("cost_l1: input dimension mismatch");
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : centroids) {
                double acc = 0.0;
                for (std::size_t j = 0; j < dim; ++j) acc += std::abs(c[j] - u[j]);
                best = std::min(best, acc);
            }
            sum += best;
        }
        return sum;
    };
    return detail::chunked_sum(inputs.size(), 64, partial);
}

}  // namespace memclust
