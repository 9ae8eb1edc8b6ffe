#include "memclust/crossbar.hpp"

#include <stdexcept>

namespace memclust {

void CrossbarConfig::validate() const {
    if (!(feedback_resistance > 0.0))
        throw std::invalid_argument("CrossbarConfig: feedback_resistance <= 0");
    if (!(input_current_scale > 0.0))
        throw std::invalid_argument("CrossbarConfig: input_current_scale <= 0");
    if (output_noise_std < 0.0)
        throw std::invalid_argument("CrossbarConfig: output_noise_std < 0");
}

Crossbar::Crossbar(std::size_t n_columns, const DeviceParams& dev,
                   const CrossbarConfig& cfg)
    : dev_(dev), cfg_(cfg) {
    if (n_columns == 0)
        throw std::invalid_argument("Crossbar: need at least one column");
    dev_.validate();
    cfg_.validate();
    columns_.assign(n_columns, midpoint_column(dev_));
}

double Crossbar::read_dot_product(std::span<const std::int8_t> u,
                                  std::mt19937_64* rng) const {
    if (u.size() != columns_.size())
        throw std::invalid_argument("read_dot_product: input length " +
                                    std::to_string(u.size()) +
                                    " != column count " +
                                    std::to_string(columns_.size()));
    double acc = 0.0;
    for (std::size_t j = 0; j < columns_.size(); ++j)
        acc += static_cast<double>(u[j]) * pair_weight(columns_[j]);
    double v = cfg_.input_current_scale * cfg_.feedback_resistance * acc;
    if (cfg_.output_noise_std > 0.0 && rng != nullptr) {
        std::normal_distribution<double> n(0.0, cfg_.output_noise_std);
        v += n(*rng);
    }
    return v;
}

void Crossbar::write_column(std::size_t j, int delta_sign,
                            std::mt19937_64* rng) {
    if (j >= columns_.size())
        throw std::out_of_range("write_column: column index out of range");
    if (delta_sign == 0) return;
    for (int k = 0; k < dev_.pulses_per_update; ++k)
        columns_[j] = pulse_pair(columns_[j], delta_sign, dev_, rng);
}

void Crossbar::program_column(std::size_t j, double target_w) {
    if (j >= columns_.size())
        throw std::out_of_range("program_column: column index out of range");
    columns_[j] = program_pair(columns_[j], target_w, dev_);
}

double Crossbar::column_weight(std::size_t j) const {
    if (j >= columns_.size())
        throw std::out_of_range("column_weight: column index out of range");
    return pair_weight(columns_[j]);
}

WtaResult winner_take_all(std::span<const double> outputs) {
    if (outputs.empty())
        throw std::invalid_argument("winner_take_all: empty input");
    std::size_t best = 0;
    for (std::size_t i = 1; i < outputs.size(); ++i)
        if (outputs[i] > outputs[best]) best = i;
    return WtaResult{best, std::vector<double>(outputs.begin(), outputs.end())};
}

}  // namespace memclust
