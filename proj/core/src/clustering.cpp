#include "memclust/clustering.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "parallel.hpp"

namespace memclust {

std::string to_string(Engine e) {
    return e == Engine::ideal ? "ideal" : "circuit";
}

Engine engine_from_string(const std::string& s) {
    if (s == "ideal") return Engine::ideal;
    if (s == "circuit") return Engine::circuit;
    throw std::invalid_argument("unknown engine '" + s + "'");
}

void TrainConfig::validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("TrainConfig: alpha outside (0, 1]");
    if (epochs < 1) throw std::invalid_argument("TrainConfig: epochs < 1");
}

ClusterModel ClusterModel::make_ideal(std::size_t clusters, std::size_t dim) {
    if (clusters == 0 || dim == 0)
        throw std::invalid_argument("ClusterModel: clusters and dim must be >= 1");
    ClusterModel m;
    m.engine_ = Engine::ideal;
    m.dim_ = dim;
    m.weights_.assign(clusters, WeightVector(dim, 0.0));
    return m;
}

ClusterModel ClusterModel::make_circuit(std::size_t clusters, std::size_t dim,
                                        const DeviceParams& dev,
                                        const CrossbarConfig& cfg) {
    if (clusters == 0 || dim == 0)
        throw std::invalid_argument("ClusterModel: clusters and dim must be >= 1");
    ClusterModel m;
    m.engine_ = Engine::circuit;
    m.dim_ = dim;
    m.crossbars_.assign(clusters, Crossbar(dim, dev, cfg));
    return m;
}

std::size_t ClusterModel::cluster_count() const {
    return engine_ == Engine::ideal ? weights_.size() : crossbars_.size();
}

WeightVector ClusterModel::weight(std::size_t i) const {
    if (i >= cluster_count())
        throw std::out_of_range("ClusterModel::weight: index out of range");
    if (engine_ == Engine::ideal) return weights_[i];
    WeightVector w(dim_);
    for (std::size_t j = 0; j < dim_; ++j) w[j] = crossbars_[i].column_weight(j);
    return w;
}

void ClusterModel::set_weight(std::size_t i, std::span<const double> w) {
    if (i >= cluster_count())
        throw std::out_of_range("ClusterModel::set_weight: index out of range");
    if (w.size() != dim_)
        throw std::invalid_argument("ClusterModel::set_weight: dimension mismatch");
    if (engine_ == Engine::ideal) {
        for (std::size_t j = 0; j < dim_; ++j)
            weights_[i][j] = std::clamp(w[j], -1.0, 1.0);
    } else {
        for (std::size_t j = 0; j < dim_; ++j) crossbars_[i].program_column(j, w[j]);
    }
}

std::vector<double> ClusterModel::distance_star(const BipolarVector& u) const {
    if (u.size() != dim_)
        throw std::invalid_argument("distance_star: input dimension " +
                                    std::to_string(u.size()) + " != model dimension " +
                                    std::to_string(dim_));
    std::vector<double> d(cluster_count());
    if (engine_ == Engine::ideal) {
        for (std::size_t i = 0; i < weights_.size(); ++i) {
            const WeightVector& w = weights_[i];
            double acc = 0.0;
            for (std::size_t j = 0; j < dim_; ++j)
                acc += static_cast<double>(u[j]) * w[j];
            d[i] = acc;
        }
    } else {
        for (std::size_t i = 0; i < crossbars_.size(); ++i) {
            const Crossbar& xb = crossbars_[i];
            const double scale = xb.config().input_current_scale *
                                 xb.config().feedback_resistance;
            d[i] = xb.read_dot_product(u, &noise_rng_) / scale;
        }
    }
    return d;
}

std::size_t ClusterModel::train_step(const BipolarVector& u, double alpha) {
    const std::vector<double> d = distance_star(u);
    const std::size_t winner = winner_take_all(d).winner_index;
    if (engine_ == Engine::ideal) {
        WeightVector& w = weights_[winner];
        for (std::size_t j = 0; j < dim_; ++j)
            w[j] = std::clamp(w[j] + alpha * static_cast<double>(u[j]), -1.0, 1.0);
    } else {
        Crossbar& xb = crossbars_[winner];
        for (std::size_t j = 0; j < dim_; ++j)
            xb.write_column(j, u[j], &noise_rng_);
    }
    return winner;
}

double ClusterModel::circuit_step() const {
    if (engine_ != Engine::circuit)
        throw std::logic_error("circuit_step: not a circuit model");
    const DeviceParams& dev = crossbars_.front().device();
    return dev.pulses_per_update * dev.weight_resolution();
}

void ClusterModel::seed_noise(std::uint64_t seed) { noise_rng_.seed(seed); }

BipolarVector map_to_hypercube(std::span<const std::uint8_t> raw) {
    BipolarVector u(raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) u[j] = raw[j] >= 128 ? 1 : -1;
    return u;
}

ClusterModel init_weights(const std::vector<BipolarVector>& inputs,
                          std::size_t clusters, std::uint64_t seed, Engine engine,
                          const DeviceParams& dev, const CrossbarConfig& cfg) {
    if (inputs.size() < clusters)
        throw std::invalid_argument("init_weights: fewer inputs than clusters");
    if (clusters == 0) throw std::invalid_argument("init_weights: clusters == 0");
    const std::size_t dim = inputs.front().size();
    for (const auto& u : inputs)
        if (u.size() != dim)
            throw std::invalid_argument("init_weights: inputs have mixed dimensions");

    // Partial Fisher-Yates: the first `clusters` slots end up holding
    // distinct indices drawn without replacement.
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(inputs.size());
    std::iota(idx.begin(), idx.end(), 0);
    for (std::size_t i = 0; i < clusters; ++i) {
        std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
        std::swap(idx[i], idx[pick(rng)]);
    }

    ClusterModel model = engine == Engine::ideal
                             ? ClusterModel::make_ideal(clusters, dim)
                             : ClusterModel::make_circuit(clusters, dim, dev, cfg);
    WeightVector w(dim);
    for (std::size_t i = 0; i < clusters; ++i) {
        const BipolarVector& u = inputs[idx[i]];
        for (std::size_t j = 0; j < dim; ++j) w[j] = static_cast<double>(u[j]);
        model.set_weight(i, w);
    }
    model.seed_noise(seed ^ 0x9e3779b97f4a7c15ULL);
    return model;
}

double manhattan_distance(double d_star, std::size_t dim) {
    return static_cast<double>(dim) - d_star;
}

TrainResult train(ClusterModel& model, const std::vector<BipolarVector>& inputs,
                  const TrainConfig& config) {
    config.validate();
    if (inputs.empty()) throw std::invalid_argument("train: no inputs");

    std::mt19937_64 order_rng(config.seed);
    std::vector<std::size_t> order(inputs.size());
    std::iota(order.begin(), order.end(), 0);

    TrainResult result;
    result.cost_trace.reserve(config.epochs);
    result.win_counts.assign(model.cluster_count(), 0);
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        if (config.shuffle) std::shuffle(order.begin(), order.end(), order_rng);
        for (std::size_t p : order)
            ++result.win_counts[model.train_step(inputs[p], config.alpha)];
        result.cost_trace.push_back(cost(model, inputs));
    }
    return result;
}

double cost(const ClusterModel& model, const std::vector<BipolarVector>& inputs) {
    // Snapshot the weights so the evaluation is engine-agnostic, pure and
    // safe to chunk across threads.
    const std::size_t clusters = model.cluster_count();
    std::vector<WeightVector> weights(clusters);
    for (std::size_t i = 0; i < clusters; ++i) weights[i] = model.weight(i);
    const double n = static_cast<double>(model.dim());

    auto partial = [&](std::size_t lo, std::size_t hi) {
        double sum = 0.0;
        for (std::size_t p = lo; p < hi; ++p) {
            const BipolarVector& u = inputs[p];
            if (u.size() != model.dim())
                throw std::invalid_argument("cost: input dimension mismatch");
            double best = std::numeric_limits<double>::infinity();
            for (const WeightVector& w : weights) {
                double acc = 0.0;
                for (std::size_t j = 0; j < u.size(); ++j)
                    acc += static_cast<double>(u[j]) * w[j];
                best = std::min(best, n - acc);
            }
            sum += best;
        }
        return sum;
    };
    return detail::chunked_sum(inputs.size(), 64, partial);
}

}  // namespace memclust
