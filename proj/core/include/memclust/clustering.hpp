#ifndef MEMCLUST_CLUSTERING_HPP
#define MEMCLUST_CLUSTERING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "memclust/crossbar.hpp"
#include "memclust/device.hpp"

namespace memclust {

/// Input pattern living on a hypercube vertex: every component is -1 or +1.
using BipolarVector = std::vector<std::int8_t>;

/// Logical cluster centroid, components in [-1, +1].
using WeightVector = std::vector<double>;

enum class Engine { ideal, circuit };

std::string to_string(Engine e);
Engine engine_from_string(const std::string& s);

struct TrainConfig {
    double alpha = 0.005;   // learning rate (ideal engine)
    int epochs = 1;
    std::uint64_t seed = 0;
    bool shuffle = false;   // reshuffle the presentation order each epoch

    void validate() const;
};

/// M centroids behind a pluggable distance engine: exact arithmetic or
/// the crossbar model. The circuit engine's learning step size is fixed
/// by the device granularity (pulses_per_update * weight_resolution),
/// independent of TrainConfig::alpha.
class ClusterModel {
public:
    static ClusterModel make_ideal(std::size_t clusters, std::size_t dim);
    static ClusterModel make_circuit(std::size_t clusters, std::size_t dim,
                                     const DeviceParams& dev = {},
                                     const CrossbarConfig& cfg = {});

    Engine engine() const { return engine_; }
    std::size_t cluster_count() const;
    std::size_t dim() const { return dim_; }

    /// Centroid i as logical weights (circuit engine: decoded from the
    /// pair conductances).
    WeightVector weight(std::size_t i) const;

    /// Ideal engine: copies with clamping. Circuit engine: programs every
    /// column; may throw NonConvergence.
    void set_weight(std::size_t i, std::span<const double> w);

    /// Dot-product scores d*_i = w_i . u for all clusters, in [-N, N].
    /// Circuit reads are rescaled by 1/(I0*R) so both engines share units.
    std::vector<double> distance_star(const BipolarVector& u) const;

    /// One presentation: picks the winner and moves only its weights
    /// toward u. Returns the winner index.
    std::size_t train_step(const BipolarVector& u, double alpha);

    /// Effective per-component weight change of one circuit update.
    double circuit_step() const;

    /// Seeds the rng used for the optional noise knobs.
    void seed_noise(std::uint64_t seed);

private:
    ClusterModel() = default;

    Engine engine_ = Engine::ideal;
    std::size_t dim_ = 0;
    std::vector<WeightVector> weights_;  // ideal engine
    std::vector<Crossbar> crossbars_;    // circuit engine
    mutable std::mt19937_64 noise_rng_{0};
};

/// Thresholds grayscale to the hypercube: 0..127 -> -1, 128..255 -> +1.
BipolarVector map_to_hypercube(std::span<const std::uint8_t> raw);

/// Initializes the M centroids to M distinct input vectors drawn without
/// replacement with the seeded generator. Throws std::invalid_argument
/// when there are fewer inputs than clusters.
ClusterModel init_weights(const std::vector<BipolarVector>& inputs,
                          std::size_t clusters, std::uint64_t seed,
                          Engine engine = Engine::ideal,
                          const DeviceParams& dev = {},
                          const CrossbarConfig& cfg = {});

/// Linear transform from the dot-product score to the l1 distance:
/// d = N - d*, in [0, 2N].
double manhattan_distance(double d_star, std::size_t dim);

struct TrainResult {
    std::vector<double> cost_trace;       // one entry per epoch
    std::vector<std::uint64_t> win_counts;  // per cluster, whole run
};

/// Runs epochs * m presentations, recording the full-trainset cost after
/// each epoch. Deterministic given the seed.
TrainResult train(ClusterModel& model, const std::vector<BipolarVector>& inputs,
                  const TrainConfig& config);

/// Total quantization cost: sum over inputs of the minimum l1 distance
/// to any centroid.
double cost(const ClusterModel& model, const std::vector<BipolarVector>& inputs);

}  // namespace memclust

#endif
