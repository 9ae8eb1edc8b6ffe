#include "memclust/device.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace memclust {

void DeviceParams::validate() const {
    if (!(0.0 < g_min && g_min < g_max))
        throw std::invalid_argument("DeviceParams: need 0 < g_min < g_max");
    if (g_max / g_min < 1000.0)
        throw std::invalid_argument("DeviceParams: OFF/ON ratio must be >= 1000");
    if (!(0.0 < read_voltage && read_voltage < v_th && v_th < write_voltage))
        throw std::invalid_argument(
            "DeviceParams: need 0 < read_voltage < v_th < write_voltage");
    if (!(0.0 < delta_g_per_pulse && delta_g_per_pulse <= g_max - g_min))
        throw std::invalid_argument(
            "DeviceParams: delta_g_per_pulse outside (0, g_max - g_min]");
    if (pulse_noise_std < 0.0)
        throw std::invalid_argument("DeviceParams: pulse_noise_std < 0");
    if (pulses_per_update < 1)
        throw std::invalid_argument("DeviceParams: pulses_per_update < 1");
}

DeviceParams DeviceParams::with_levels(int levels) const {
    if (levels < 1) throw std::invalid_argument("with_levels: levels < 1");
    DeviceParams p = *this;
    p.delta_g_per_pulse = (g_max - g_min) / static_cast<double>(levels);
    return p;
}

MemristorState apply_pulse(MemristorState s, double v, const DeviceParams& p,
                           std::mt19937_64* rng) {
    if (std::abs(v) <= p.v_th) return s;
    double dg = p.delta_g_per_pulse;
    if (p.pulse_noise_std > 0.0 && rng != nullptr) {
        std::normal_distribution<double> n(1.0, p.pulse_noise_std);
        dg = std::max(0.0, dg * n(*rng));
    }
    if (v > 0.0)
        s.g = std::min(s.g + dg, p.g_max);
    else
        s.g = std::max(s.g - dg, p.g_min);
    return s;
}

double pair_weight(const DiffPairColumn& col) {
    const double g1 = col.top.g;
    const double g2 = col.bottom.g;
    return (g2 - g1) / (g1 + g2);
}

DiffPairColumn pulse_pair(DiffPairColumn col, int delta_sign,
                          const DeviceParams& p, std::mt19937_64* rng) {
    if (delta_sign == 0) return col;
    const double v = delta_sign > 0 ? p.write_voltage : -p.write_voltage;
    col.bottom = apply_pulse(col.bottom, v, p, rng);
    col.top = apply_pulse(col.top, -v, p, rng);
    return col;
}

DiffPairColumn midpoint_column(const DeviceParams& p) {
    const double mid = 0.5 * (p.g_min + p.g_max);
    return DiffPairColumn{{mid}, {mid}};
}

DiffPairColumn program_pair(DiffPairColumn col, double target_w,
                            const DeviceParams& p, long pulse_budget) {
    if (!(target_w >= -1.0 && target_w <= 1.0))
        throw std::invalid_argument("program_pair: target outside [-1, 1]");
    const double target = std::clamp(target_w, p.w_lo(), p.w_hi());
    if (pulse_budget < 0)
        pulse_budget =
            static_cast<long>(10.0 * (p.g_max - p.g_min) / p.delta_g_per_pulse);

    const double half_step = 0.5 * p.weight_resolution();
    for (long i = 0; i < pulse_budget; ++i) {
        const double err = target - pair_weight(col);
        if (std::abs(err) <= half_step) return col;
        DiffPairColumn next = pulse_pair(col, err > 0.0 ? 1 : -1, p);
        // No progress means the pair is saturated or as close as the
        // granularity allows.
        if (std::abs(target - pair_weight(next)) >= std::abs(err)) return col;
        col = next;
    }
    if (std::abs(target - pair_weight(col)) <= p.weight_resolution()) return col;
    throw NonConvergence("program_pair: pulse budget of " +
                         std::to_string(pulse_budget) +
                         " exhausted; delta_g_per_pulse too coarse");
}

}  // namespace memclust
