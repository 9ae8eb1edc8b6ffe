#ifndef MEMCLUST_CROSSBAR_HPP
#define MEMCLUST_CROSSBAR_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "memclust/device.hpp"

namespace memclust {

struct CrossbarConfig {
    double feedback_resistance = 10e3;  // ohms
    double input_current_scale = 1e-6;  // amperes per unit input
    double output_noise_std = 0.0;      // volts, additive on the readout

    void validate() const;
};

/// One crossbar of N differential-pair columns plus the summing
/// amplifier. Reads return I0 * R * sum_j(u_j * w_j); writes drive a
/// single column differentially.
class Crossbar {
public:
    Crossbar(std::size_t n_columns, const DeviceParams& dev,
             const CrossbarConfig& cfg);

    std::size_t size() const { return columns_.size(); }

    /// Output voltage for a bipolar input. Pure unless output noise is
    /// enabled and an rng is supplied.
    double read_dot_product(std::span<const std::int8_t> u,
                            std::mt19937_64* rng = nullptr) const;

    /// pulses_per_update differential pulses on column j, or nothing
    /// when delta_sign is 0.
    void write_column(std::size_t j, int delta_sign,
                      std::mt19937_64* rng = nullptr);

    /// Programs column j to clamp(target_w, w_lo, w_hi).
    void program_column(std::size_t j, double target_w);

    double column_weight(std::size_t j) const;

    const DeviceParams& device() const { return dev_; }
    const CrossbarConfig& config() const { return cfg_; }

private:
    std::vector<DiffPairColumn> columns_;
    DeviceParams dev_;
    CrossbarConfig cfg_;
};

struct WtaResult {
    std::size_t winner_index = 0;
    std::vector<double> raw_outputs;
};

/// Behavioral winner-take-all: exact argmax, lowest index on ties.
WtaResult winner_take_all(std::span<const double> outputs);

}  // namespace memclust

#endif
