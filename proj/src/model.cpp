#include "ambc/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace ambc {
namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

void require_finite_non_negative(double v, const char* name) {
    require(std::isfinite(v) && v >= 0.0,
            std::string(name) + " must be finite and >= 0");
}

// 0/0 resolves to 0: with h = f = g = 0 every rate degenerates to zero.
double sinr_ratio(double num, double den) {
    if (num == 0.0) return 0.0;
    return num / den;
}

}  // namespace

ImpairmentLevels::ImpairmentLevels(double kp, double kr)
    : kappa_p(kp), kappa_r(kr), kappa(aggregate_kappa(kp, kr)) {}

double aggregate_kappa(double kappa_p, double kappa_r) {
    require_finite_non_negative(kappa_p, "kappa_p");
    require_finite_non_negative(kappa_r, "kappa_r");
    return kappa_r * kappa_r * kappa_p * kappa_p + kappa_r * kappa_r +
           kappa_p * kappa_p;
}

SystemParams::SystemParams(double p0_mw_, double bandwidth_hz_,
                           int spreading_factor_, double beta_,
                           double noise_power_mw_, ImpairmentLevels impairments_,
                           double block_duration_s_)
    : p0_mw(p0_mw_),
      bandwidth_hz(bandwidth_hz_),
      spreading_factor(spreading_factor_),
      beta(beta_),
      noise_power_mw(noise_power_mw_),
      impairments(impairments_),
      block_duration_s(block_duration_s_) {
    require(std::isfinite(p0_mw) && p0_mw > 0.0, "p0_mw must be > 0");
    require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0.0,
            "bandwidth_hz must be > 0");
    require(spreading_factor >= 1, "spreading_factor must be >= 1");
    require(std::isfinite(beta) && beta >= 0.0 && beta <= 1.0,
            "beta out of range [0, 1]");
    require(std::isfinite(noise_power_mw) && noise_power_mw >= 0.0,
            "noise_power_mw must be >= 0");
    require(std::isfinite(block_duration_s) && block_duration_s > 0.0,
            "block_duration_s must be > 0");
}

ChannelState::ChannelState(double h_, double f_, double g_)
    : h(h_), f(f_), g(g_) {
    require_finite_non_negative(h, "channel gain h");
    require_finite_non_negative(f, "channel gain f");
    require_finite_non_negative(g, "channel gain g");
}

double primary_sinr_conditional(double cs_mag_sq, const SystemParams& params,
                                const ChannelState& ch) {
    require_finite_non_negative(cs_mag_sq, "cs_mag_sq");
    const double combined = ch.h * params.beta * ch.g * cs_mag_sq + ch.f;
    const double num = params.p0_mw * combined;
    const double den =
        params.p0_mw * combined * params.impairments.kappa + params.noise_power_mw;
    return sinr_ratio(num, den);
}

double primary_rate_conditional(double cs_mag_sq, const SystemParams& params,
                                const ChannelState& ch) {
    return params.bandwidth_hz *
           std::log2(1.0 + primary_sinr_conditional(cs_mag_sq, params, ch));
}

double backscatter_sinr(const SystemParams& params, const ChannelState& ch) {
    const double bhg = params.beta * ch.h * ch.g;
    const double num = params.spreading_factor * bhg * params.p0_mw;
    const double den = params.p0_mw * (bhg + ch.f) * params.impairments.kappa +
                       params.noise_power_mw;
    return sinr_ratio(num, den);
}

double backscatter_rate(const SystemParams& params, const ChannelState& ch) {
    return params.bandwidth_hz / params.spreading_factor *
           std::log2(1.0 + backscatter_sinr(params, ch));
}

double ideal_primary_rate_conditional(double cs_mag_sq,
                                      const SystemParams& params,
                                      const ChannelState& ch) {
    return primary_rate_conditional(
        cs_mag_sq, params.with_impairments(ImpairmentLevels::ideal()), ch);
}

double ideal_backscatter_rate(const SystemParams& params,
                              const ChannelState& ch) {
    return backscatter_rate(params.with_impairments(ImpairmentLevels::ideal()),
                            ch);
}

double primary_rate_ceiling(const SystemParams& params) {
    const double kappa = params.impairments.kappa;
    if (kappa <= 0.0)
        throw std::domain_error(
            "no finite primary-rate ceiling under ideal hardware (kappa == 0)");
    return params.bandwidth_hz * std::log2(1.0 + 1.0 / kappa);
}

double backscatter_rate_ceiling(const SystemParams& params,
                                const ChannelState& ch) {
    const double kappa = params.impairments.kappa;
    if (kappa <= 0.0)
        throw std::domain_error(
            "no finite backscatter-rate ceiling under ideal hardware (kappa == "
            "0)");
    const double bhg = params.beta * ch.h * ch.g;
    if (bhg + ch.f <= 0.0)
        throw std::domain_error(
            "backscatter-rate ceiling undefined for beta*h*g + f == 0");
    return params.bandwidth_hz / params.spreading_factor *
           std::log2(1.0 + params.spreading_factor * bhg / ((bhg + ch.f) * kappa));
}

double noncooperation_rate(const SystemParams& params, const ChannelState& ch) {
    const double num = params.p0_mw * ch.f;
    const double den =
        num * params.impairments.kappa + params.noise_power_mw;
    return params.bandwidth_hz * std::log2(1.0 + sinr_ratio(num, den));
}

}  // namespace ambc
