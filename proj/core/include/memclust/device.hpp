#ifndef MEMCLUST_DEVICE_HPP
#define MEMCLUST_DEVICE_HPP

#include <random>
#include <stdexcept>

namespace memclust {

/// Behavioral parameters of a single memristive device.
///
/// The model is deliberately simple: conductance moves by a fixed
/// increment per supra-threshold pulse and is hard-clamped to
/// [g_min, g_max]. Optional multiplicative Gaussian noise on the
/// increment is the only non-ideality knob.
struct DeviceParams {
    double g_min = 0.1e-6;                          // siemens (10 MOhm)
    double g_max = 100e-6;                          // siemens (10 kOhm)
    double v_th = 1.0;                              // volts, write threshold
    double delta_g_per_pulse = (100e-6 - 0.1e-6) / 256.0;
    double read_voltage = 0.1;                      // volts, below v_th
    double write_voltage = 1.5;                     // volts, above v_th
    double pulse_noise_std = 0.0;                   // rel. std of delta_g
    int pulses_per_update = 1;                      // pulses per learn event

    void validate() const;

    /// Weight reached when the pair saturates at (g_min, g_max).
    double w_hi() const { return (g_max - g_min) / (g_max + g_min); }
    double w_lo() const { return -w_hi(); }

    /// Worst-case weight change of one differential pulse pair for
    /// columns whose conductance sum never drops below g_min + g_max.
    double weight_resolution() const {
        return 2.0 * delta_g_per_pulse / (g_min + g_max);
    }

    /// Same device with delta_g_per_pulse set to span the conductance
    /// range in `levels` steps.
    DeviceParams with_levels(int levels) const;
};

struct MemristorState {
    double g = 0.0;  // siemens, always within [g_min, g_max]
};

/// One signed weight component stored as two conductances.
/// top (G1) pulls the column output negative, bottom (G2) positive.
struct DiffPairColumn {
    MemristorState top;
    MemristorState bottom;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Applies one voltage pulse. Sub-threshold pulses (|v| <= v_th) leave
/// the state untouched; above threshold the conductance steps by
/// delta_g_per_pulse toward the corresponding bound.
MemristorState apply_pulse(MemristorState s, double v, const DeviceParams& p,
                           std::mt19937_64* rng = nullptr);

/// (G2 - G1) / (G1 + G2), the signed weight in (-1, 1).
double pair_weight(const DiffPairColumn& col);

/// One differential write: delta_sign=+1 drives bottom up and top down,
/// delta_sign=-1 the reverse, 0 is a no-op.
DiffPairColumn pulse_pair(DiffPairColumn col, int delta_sign,
                          const DeviceParams& p,
                          std::mt19937_64* rng = nullptr);

/// Fresh column with both devices at mid-range conductance (weight 0).
DiffPairColumn midpoint_column(const DeviceParams& p);

/// Pulses the pair until its weight is within one pulse of
/// clamp(target_w, w_lo, w_hi). Throws NonConvergence if the pulse
/// budget (default 10 * (g_max - g_min) / delta_g_per_pulse) runs out.
DiffPairColumn program_pair(DiffPairColumn col, double target_w,
                            const DeviceParams& p, long pulse_budget = -1);

}  // namespace memclust

#endif
