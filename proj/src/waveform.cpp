#include "ambc/waveform.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ambc/parallel.hpp"

namespace ambc::wf {
namespace {

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

double rel_dev_of(double value, double target) {
    if (!std::isfinite(value) || !std::isfinite(target)) {
        return (std::isinf(value) && std::isinf(target))
                   ? 0.0
                   : std::numeric_limits<double>::infinity();
    }
    if (target == 0.0) return value == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return std::fabs(value - target) / target;
}

EmpiricalSinr make_stat(double value, double target, std::uint64_t n_symbols) {
    EmpiricalSinr stat;
    stat.value = value;
    stat.target = target;
    stat.n_symbols = n_symbols;
    stat.rel_dev = rel_dev_of(value, target);
    stat.low_sample_warning = n_symbols < kMinSymbolsForTightStats;
    return stat;
}

double power_ratio(double signal, double noise) {
    if (noise == 0.0)
        return signal == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return signal / noise;
}

std::complex<double> block_cs(double cs_mag, rng::Stream& stream) {
    return std::polar(cs_mag, stream.uniform_angle());
}

}  // namespace

SymbolBlock synthesize_block(const SystemParams& params, const ChannelState& ch,
                             std::complex<double> c_s, rng::Stream& stream) {
    const auto L = static_cast<std::size_t>(params.spreading_factor);
    const double kp = params.impairments.kappa_p;
    const double kr = params.impairments.kappa_r;
    const double bhg = params.beta * ch.h * ch.g;
    const double amp_p0 = std::sqrt(params.p0_mw);
    const double amp_back = std::sqrt(bhg);
    const double amp_direct = std::sqrt(ch.f);
    const double sd_tau_p = kp * amp_p0;
    const double sd_tau_r = std::sqrt(kr * kr * params.p0_mw * (1.0 + kp * kp) *
                                      (bhg * std::norm(c_s) + ch.f));
    const double sd_w = std::sqrt(params.noise_power_mw);

    SymbolBlock block;
    block.c_s = c_s;
    block.x_p.resize(L);
    block.tau_p.resize(L);
    block.tau_r.resize(L);
    block.w.resize(L);
    block.y_pr.resize(L);
    for (std::size_t n = 0; n < L; ++n) {
        block.x_p[n] = stream.complex_gaussian();
        block.tau_p[n] = sd_tau_p * stream.complex_gaussian();
        block.tau_r[n] = sd_tau_r * stream.complex_gaussian();
        block.w[n] = sd_w * stream.complex_gaussian();
        const std::complex<double> distorted = amp_p0 * block.x_p[n] + block.tau_p[n];
        block.y_pr[n] = amp_back * distorted * c_s + amp_direct * distorted +
                        block.tau_r[n] + block.w[n];
    }
    return block;
}

EmpiricalSinr measure_primary_sinr(std::span<const SymbolBlock> blocks,
                                   const SystemParams& params,
                                   const ChannelState& ch) {
    require(!blocks.empty(), "measure_primary_sinr requires at least one block");
    const double cs_mag = std::abs(blocks.front().c_s);
    for (const SymbolBlock& block : blocks) {
        require(std::fabs(std::abs(block.c_s) - cs_mag) <= 1e-9 * (1.0 + cs_mag),
                "all blocks must share the same |c_s|");
    }

    const double amp_back = std::sqrt(params.beta * ch.h * ch.g);
    const double amp_direct = std::sqrt(ch.f);
    const double amp_p0 = std::sqrt(params.p0_mw);
    CompensatedSum signal_power, residual_power;
    std::uint64_t n_symbols = 0;
    for (const SymbolBlock& block : blocks) {
        const std::complex<double> effective =
            amp_p0 * (amp_back * block.c_s + amp_direct);
        for (std::size_t n = 0; n < block.y_pr.size(); ++n) {
            const std::complex<double> s = effective * block.x_p[n];
            signal_power.add(std::norm(s));
            residual_power.add(std::norm(block.y_pr[n] - s));
            ++n_symbols;
        }
    }
    const double value =
        power_ratio(signal_power.value(), residual_power.value());
    const double target =
        primary_sinr_conditional(cs_mag * cs_mag, params, ch);
    return make_stat(value, target, n_symbols);
}

std::complex<double> sic_and_despread(const SymbolBlock& block,
                                      const SystemParams& params,
                                      const ChannelState& ch) {
    const double amp_direct_p0 = std::sqrt(ch.f * params.p0_mw);
    const double amp_p0 = std::sqrt(params.p0_mw);
    std::complex<double> correlation{0.0, 0.0};
    double energy = 0.0;
    for (std::size_t n = 0; n < block.y_pr.size(); ++n) {
        const std::complex<double> residual =
            block.y_pr[n] - amp_direct_p0 * block.x_p[n];
        correlation += residual * std::conj(block.x_p[n]);
        energy += std::norm(block.x_p[n]);
    }
    if (energy == 0.0) return {0.0, 0.0};
    return correlation / (amp_p0 * energy);
}

EmpiricalSinr run_primary_sinr_campaign(const SystemParams& params,
                                        const ChannelState& ch, double cs_mag,
                                        std::uint64_t n_blocks,
                                        std::uint64_t seed) {
    require(n_blocks >= 1, "n_blocks must be >= 1");
    std::vector<SymbolBlock> blocks;
    blocks.reserve(n_blocks);
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
        rng::Stream stream(seed, rng::stream::block, b);
        blocks.push_back(
            synthesize_block(params, ch, block_cs(cs_mag, stream), stream));
    }
    return measure_primary_sinr(blocks, params, ch);
}

EmpiricalSinr run_despread_sinr_campaign(const SystemParams& params,
                                         const ChannelState& ch,
                                         std::uint64_t n_blocks,
                                         std::uint64_t seed) {
    require(n_blocks >= 1, "n_blocks must be >= 1");
    const double bhg = params.beta * ch.h * ch.g;
    const double amp_back = std::sqrt(bhg);
    CompensatedSum cs_power, weighted_noise;
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
        rng::Stream stream(seed, rng::stream::block, b);
        const std::complex<double> c_s = block_cs(1.0, stream);
        const SymbolBlock block = synthesize_block(params, ch, c_s, stream);
        const std::complex<double> statistic =
            sic_and_despread(block, params, ch);
        double energy = 0.0;
        for (const auto& x : block.x_p) energy += std::norm(x);
        const std::complex<double> error = statistic - amp_back * c_s;
        // Var(error) = N / (P0 * energy); weighting by P0*energy recovers the
        // per-symbol noise power N that the MRC formula divides by.
        weighted_noise.add(std::norm(error) * params.p0_mw * energy);
        cs_power.add(std::norm(c_s));
    }
    const auto blocks = static_cast<double>(n_blocks);
    const double mean_noise = weighted_noise.value() / blocks;
    const double mean_cs_power = cs_power.value() / blocks;
    const double value = power_ratio(
        params.spreading_factor * bhg * params.p0_mw * mean_cs_power, mean_noise);
    const double target = backscatter_sinr(params, ch);
    return make_stat(value, target,
                     n_blocks * static_cast<std::uint64_t>(params.spreading_factor));
}

NoiseVarianceReport measure_noise_variances(const SystemParams& params,
                                            const ChannelState& ch,
                                            double cs_mag,
                                            std::uint64_t n_blocks,
                                            std::uint64_t seed) {
    require(n_blocks >= 1, "n_blocks must be >= 1");
    const double kp = params.impairments.kappa_p;
    const double kr = params.impairments.kappa_r;
    const double bhg = params.beta * ch.h * ch.g;
    CompensatedSum tau_p_power, tau_r_power, w_power;
    std::uint64_t n_symbols = 0;
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
        rng::Stream stream(seed, rng::stream::block, b);
        const SymbolBlock block =
            synthesize_block(params, ch, block_cs(cs_mag, stream), stream);
        for (std::size_t n = 0; n < block.x_p.size(); ++n) {
            tau_p_power.add(std::norm(block.tau_p[n]));
            tau_r_power.add(std::norm(block.tau_r[n]));
            w_power.add(std::norm(block.w[n]));
            ++n_symbols;
        }
    }
    const auto n = static_cast<double>(n_symbols);
    NoiseVarianceReport report;
    report.tau_p = make_stat(tau_p_power.value() / n,
                             kp * kp * params.p0_mw, n_symbols);
    report.tau_r = make_stat(tau_r_power.value() / n,
                             kr * kr * params.p0_mw * (1.0 + kp * kp) *
                                 (bhg * cs_mag * cs_mag + ch.f),
                             n_symbols);
    report.w = make_stat(w_power.value() / n, params.noise_power_mw, n_symbols);
    return report;
}

SpreadingGainReport spreading_gain_check(const SystemParams& params,
                                         const ChannelState& ch,
                                         std::span<const int> l_values,
                                         std::uint64_t n_symbols_per_l,
                                         std::uint64_t seed) {
    require(!l_values.empty(), "spreading_gain_check requires l_values");
    SpreadingGainReport report;
    CompensatedSum sum_x, sum_y, sum_xx, sum_xy;
    for (int l : l_values) {
        require(l >= 1, "spreading factors must be >= 1");
        SystemParams params_l(params.p0_mw, params.bandwidth_hz, l, params.beta,
                              params.noise_power_mw, params.impairments,
                              params.block_duration_s);
        const std::uint64_t n_blocks =
            std::max<std::uint64_t>(1, n_symbols_per_l / static_cast<std::uint64_t>(l));
        SpreadingGainPoint point;
        point.spreading_factor = l;
        point.sinr = run_despread_sinr_campaign(params_l, ch, n_blocks, seed);
        report.points.push_back(point);
        const double x = std::log(static_cast<double>(l));
        const double y = std::log(point.sinr.value);
        sum_x.add(x);
        sum_y.add(y);
        sum_xx.add(x * x);
        sum_xy.add(x * y);
    }
    const auto n = static_cast<double>(l_values.size());
    const double denom = sum_xx.value() - sum_x.value() * sum_x.value() / n;
    report.loglog_slope =
        denom == 0.0
            ? 0.0
            : (sum_xy.value() - sum_x.value() * sum_y.value() / n) / denom;
    return report;
}

}  // namespace ambc::wf
