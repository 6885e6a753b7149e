#ifndef AMBC_MODEL_HPP
#define AMBC_MODEL_HPP

#include <optional>

namespace ambc {

/// Residual transceiver distortion levels of the primary transmitter (kappa_p)
/// and primary receiver (kappa_r). The aggregate kappa is the combined level
/// that multiplies signal power in every SINR denominator.
struct ImpairmentLevels {
    double kappa_p = 0.0;
    double kappa_r = 0.0;
    double kappa = 0.0;  // kappa_r^2*kappa_p^2 + kappa_r^2 + kappa_p^2

    ImpairmentLevels() = default;
    ImpairmentLevels(double kappa_p, double kappa_r);

    static ImpairmentLevels ideal() { return {}; }
};

/// kappa_r^2*kappa_p^2 + kappa_r^2 + kappa_p^2. Zero iff both levels are zero.
double aggregate_kappa(double kappa_p, double kappa_r);

/// Link-level scenario parameters. Powers are in mW, rates in bit/s;
/// dBm/dB conversions happen at the configuration boundary only.
struct SystemParams {
    double p0_mw;             // PT average transmit power
    double bandwidth_hz;      // B_w
    int spreading_factor;     // L: BD symbol period in primary symbol periods
    double beta;              // power reflection coefficient, in [0, 1]
    double noise_power_mw;    // sigma^2 = noise PSD x bandwidth; 0 allowed for
                              // noiseless waveform validation runs
    ImpairmentLevels impairments;
    double block_duration_s;  // carried for interface completeness; no rate
                              // formula consumes it

    SystemParams(double p0_mw, double bandwidth_hz, int spreading_factor,
                 double beta, double noise_power_mw,
                 ImpairmentLevels impairments = {},
                 double block_duration_s = 1.0);

    SystemParams with_impairments(ImpairmentLevels levels) const {
        SystemParams p = *this;
        p.impairments = levels;
        return p;
    }
};

/// Instantaneous channel power gains: h (PT->BD), f (PT->PR), g (BD->PR).
struct ChannelState {
    double h = 0.0;
    double f = 0.0;
    double g = 0.0;

    ChannelState() = default;
    ChannelState(double h, double f, double g);
};

/// Every rate quantity for one parameter point. MC fields are absent when no
/// Monte Carlo estimate was run; ceilings are absent when kappa == 0 (no
/// finite ceiling under ideal hardware).
struct RateReport {
    double c_p_analytic = 0.0;
    std::optional<double> c_p_mc;
    std::optional<double> c_p_mc_stderr;
    double c_p_noncoop = 0.0;
    double c_s = 0.0;
    double c_p_ideal = 0.0;
    double c_s_ideal = 0.0;
    std::optional<double> ceiling_p;
    std::optional<double> ceiling_s;
};

/// SINR for decoding the primary symbol conditioned on |c_s|^2. Strictly
/// increasing in cs_mag_sq whenever h*beta*g > 0.
double primary_sinr_conditional(double cs_mag_sq, const SystemParams& params,
                                const ChannelState& ch);

/// B_w * log2(1 + primary_sinr_conditional), bit/s.
double primary_rate_conditional(double cs_mag_sq, const SystemParams& params,
                                const ChannelState& ch);

/// Post-despreading SINR of the backscatter symbol after MRC over L primary
/// symbol periods: L*beta*h*g*P0 / (P0*(beta*h*g + f)*kappa + sigma^2).
double backscatter_sinr(const SystemParams& params, const ChannelState& ch);

/// (B_w/L) * log2(1 + backscatter_sinr), bit/s.
double backscatter_rate(const SystemParams& params, const ChannelState& ch);

/// Ideal-hardware counterparts: the same formulas with kappa_p = kappa_r = 0.
double ideal_primary_rate_conditional(double cs_mag_sq,
                                      const SystemParams& params,
                                      const ChannelState& ch);
double ideal_backscatter_rate(const SystemParams& params,
                              const ChannelState& ch);

/// Limiting primary rate as P0 grows: B_w * log2(1 + 1/kappa). Throws
/// std::domain_error for kappa == 0 (no finite ceiling under ideal hardware).
double primary_rate_ceiling(const SystemParams& params);

/// Limiting backscatter rate as P0 grows:
/// (B_w/L) * log2(1 + L*beta*h*g / ((beta*h*g + f)*kappa)).
/// Grows as f shrinks. Throws std::domain_error for kappa == 0 or when
/// beta*h*g + f == 0.
double backscatter_rate_ceiling(const SystemParams& params,
                                const ChannelState& ch);

/// Primary rate when the backscatter device is denied access:
/// B_w * log2(1 + P0*f / (P0*f*kappa + sigma^2)).
double noncooperation_rate(const SystemParams& params, const ChannelState& ch);

}  // namespace ambc

#endif  // AMBC_MODEL_HPP
