#ifndef MEMCLUST_BASELINE_HPP
#define MEMCLUST_BASELINE_HPP

#include <cstdint>
#include <vector>

namespace memclust {

struct KMeansConfig {
    std::size_t k = 1;
    int max_iters = 300;
    int restarts = 5;
    std::uint64_t seed = 0;
    double tolerance = 1e-6;  // relative centroid movement stop

    void validate() const;
};

struct KMeansResult {
    std::vector<std::vector<double>> centroids;
    std::vector<std::size_t> assignments;
    double inertia = 0.0;                 // within-cluster sum of squares
    std::vector<double> inertia_trace;    // per Lloyd iteration, best restart
};

/// Lloyd's algorithm with squared-Euclidean distance and kmeans++-style
/// seeding; best of `restarts` runs by inertia (ties by restart index).
/// Empty clusters are reseeded to the point farthest from its centroid.
KMeansResult kmeans(const std::vector<std::vector<double>>& inputs,
                    const KMeansConfig& config);

/// Same cost the clustering module minimizes, evaluated on arbitrary
/// centroids: sum over inputs of the minimum l1 distance.
double cost_l1(const std::vector<std::vector<double>>& centroids,
               const std::vector<std::vector<double>>& inputs);

}  // namespace memclust

#endif
