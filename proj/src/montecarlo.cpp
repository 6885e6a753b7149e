#include "ambc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ambc/analytic.hpp"
#include "ambc/parallel.hpp"

namespace ambc::mc {
namespace {

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

double path_gain(double small_scale, double distance_m, double exponent) {
    return small_scale * std::pow(distance_m, -exponent);
}

double small_scale_draw(const FadingModel& fading, rng::Stream& stream) {
    switch (fading.kind) {
        case FadingKind::rayleigh: return stream.exponential();
        case FadingKind::fixed_unit: return 1.0;
    }
    return 1.0;
}

}  // namespace

void Geometry::validate() const {
    require(std::isfinite(d_ps_m) && d_ps_m > 0.0, "d_ps_m must be > 0");
    require(std::isfinite(d_sr_m) && d_sr_m > 0.0, "d_sr_m must be > 0");
    require(std::isfinite(d_pr_m) && d_pr_m > 0.0, "d_pr_m must be > 0");
    require(std::isfinite(alpha_ps) && alpha_ps > 0.0, "alpha_ps must be > 0");
    require(std::isfinite(alpha_sr) && alpha_sr > 0.0, "alpha_sr must be > 0");
    require(std::isfinite(alpha_pr) && alpha_pr > 0.0, "alpha_pr must be > 0");
}

CsDistribution CsDistribution::psk(int order) {
    require(order >= 2, "psk order must be >= 2");
    return {CsKind::psk, order};
}

const char* CsDistribution::name() const {
    switch (kind) {
        case CsKind::complex_gaussian: return "complex-gaussian";
        case CsKind::psk: return "psk";
        case CsKind::constant_envelope: return "constant-envelope";
    }
    return "unknown";
}

double CsDistribution::sample_mag_sq(rng::Stream& stream) const {
    switch (kind) {
        case CsKind::complex_gaussian: return stream.exponential();
        case CsKind::psk:
        case CsKind::constant_envelope: return 1.0;
    }
    return 1.0;
}

std::complex<double> CsDistribution::sample(rng::Stream& stream) const {
    switch (kind) {
        case CsKind::complex_gaussian: return stream.complex_gaussian();
        case CsKind::psk: {
            const auto m = static_cast<std::uint64_t>(psk_order);
            const auto idx = static_cast<double>(stream.next_u64() % m);
            return std::polar(1.0, 2.0 * std::numbers::pi * idx /
                                       static_cast<double>(m));
        }
        case CsKind::constant_envelope:
            return std::polar(1.0, stream.uniform_angle());
    }
    return {1.0, 0.0};
}

ChannelState sample_channel(const Geometry& geometry, const FadingModel& fading,
                            rng::Stream& stream) {
    geometry.validate();
    const double h = path_gain(small_scale_draw(fading, stream), geometry.d_ps_m,
                               geometry.alpha_ps);
    const double f = path_gain(small_scale_draw(fading, stream), geometry.d_sr_m,
                               geometry.alpha_sr);
    const double g = path_gain(small_scale_draw(fading, stream), geometry.d_pr_m,
                               geometry.alpha_pr);
    return {h, f, g};
}

McEstimate estimate_primary_rate(const SystemParams& params,
                                 const ChannelState& ch,
                                 const CsDistribution& cs,
                                 std::uint64_t n_samples, std::uint64_t seed,
                                 const EstimatorOptions& options) {
    require(n_samples >= 1, "estimate_primary_rate requires n_samples >= 1");
    require(options.chunk_size >= 1, "chunk_size must be >= 1");

    const std::uint64_t chunks = chunk_count(n_samples, options.chunk_size);
    std::vector<double> chunk_sum(chunks), chunk_sum_sq(chunks);
    for_each_chunk(n_samples, options.chunk_size, options.workers,
                   [&](std::uint64_t c, std::uint64_t begin, std::uint64_t end) {
                       CompensatedSum sum, sum_sq;
                       for (std::uint64_t i = begin; i < end; ++i) {
                           rng::Stream draw(seed, rng::stream::cs,
                                            options.index_offset + i);
                           const double rate = primary_rate_conditional(
                               cs.sample_mag_sq(draw), params, ch);
                           sum.add(rate);
                           sum_sq.add(rate * rate);
                       }
                       chunk_sum[c] = sum.value();
                       chunk_sum_sq[c] = sum_sq.value();
                   });

    CompensatedSum total, total_sq;
    for (std::uint64_t c = 0; c < chunks; ++c) {
        total.add(chunk_sum[c]);
        total_sq.add(chunk_sum_sq[c]);
    }
    const auto n = static_cast<double>(n_samples);
    const double mean = total.value() / n;
    double std_error = 0.0;
    if (n_samples >= 2) {
        const double variance =
            std::max(0.0, (total_sq.value() - n * mean * mean) / (n - 1.0));
        std_error = std::sqrt(variance / n);
    }
    return {mean, std_error, n_samples, seed};
}

double expected_primary_rate(const SystemParams& params, const ChannelState& ch,
                             const CsDistribution& cs) {
    switch (cs.kind) {
        case CsKind::complex_gaussian:
            return primary_rate_closed_form(ClosedFormInputs::from(params, ch));
        case CsKind::psk:
        case CsKind::constant_envelope:
            return primary_rate_conditional(1.0, params, ch);
    }
    return 0.0;
}

Theorem1Result verify_theorem1(const SystemParams& params,
                               const ChannelState& ch, const CsDistribution& cs,
                               std::uint64_t n_samples, std::uint64_t seed,
                               const EstimatorOptions& options) {
    Theorem1Result result;
    result.noncoop = noncooperation_rate(params, ch);
    result.analytic = expected_primary_rate(params, ch, cs);
    if (n_samples > 0) {
        result.mc = estimate_primary_rate(params, ch, cs, n_samples, seed, options);
    }
    result.boundary = (ch.h * params.beta * ch.g == 0.0);
    result.margin = result.analytic - result.noncoop;
    result.strict = result.margin > 0.0;
    return result;
}

CeilingReport verify_ceilings(const SystemParams& params_base,
                              const ChannelState& ch,
                              std::span<const double> p0_grid_mw,
                              double fraction) {
    if (params_base.impairments.kappa <= 0.0)
        throw std::domain_error("verify_ceilings requires kappa > 0");
    require(!p0_grid_mw.empty(), "verify_ceilings requires a non-empty grid");
    require(std::is_sorted(p0_grid_mw.begin(), p0_grid_mw.end()),
            "p0 grid must be ascending");

    CeilingReport report;
    report.fraction = fraction;
    report.ceiling_p = primary_rate_ceiling(params_base);
    report.ceiling_s = backscatter_rate_ceiling(params_base, ch);
    report.all_below = true;
    report.monotone = true;
    report.min_margin_p = report.ceiling_p;
    report.min_margin_s = report.ceiling_s;

    double prev_p = 0.0;
    double prev_s = 0.0;
    for (double p0 : p0_grid_mw) {
        SystemParams params = params_base;
        params.p0_mw = p0;
        CeilingPoint point;
        point.p0_mw = p0;
        point.c_p = primary_rate_closed_form(ClosedFormInputs::from(params, ch));
        point.c_s = backscatter_rate(params, ch);
        report.all_below = report.all_below && point.c_p < report.ceiling_p &&
                           point.c_s < report.ceiling_s;
        if (!report.points.empty()) {
            report.monotone = report.monotone && point.c_p >= prev_p &&
                              point.c_s >= prev_s;
        }
        report.min_margin_p =
            std::min(report.min_margin_p, report.ceiling_p - point.c_p);
        report.min_margin_s =
            std::min(report.min_margin_s, report.ceiling_s - point.c_s);
        prev_p = point.c_p;
        prev_s = point.c_s;
        report.points.push_back(point);
    }
    const CeilingPoint& last = report.points.back();
    report.final_within_fraction =
        last.c_p >= (1.0 - fraction) * report.ceiling_p &&
        last.c_s >= (1.0 - fraction) * report.ceiling_s;
    return report;
}

DominanceResult verify_ideal_dominance(const SystemParams& params,
                                       const ChannelState& ch,
                                       const CsDistribution& cs,
                                       std::uint64_t n_samples,
                                       std::uint64_t seed,
                                       std::uint64_t index_offset) {
    require(n_samples >= 1, "verify_ideal_dominance requires n_samples >= 1");
    DominanceResult result;
    result.n_samples = n_samples;
    if (params.impairments.kappa == 0.0) {
        result.equality_boundary = true;
        return result;
    }
    bool strict = true;
    double min_gap = std::numeric_limits<double>::infinity();
    for (std::uint64_t i = 0; i < n_samples; ++i) {
        rng::Stream draw(seed, rng::stream::dominance, index_offset + i);
        const double mag_sq = cs.sample_mag_sq(draw);
        const double impaired = primary_rate_conditional(mag_sq, params, ch);
        const double ideal = ideal_primary_rate_conditional(mag_sq, params, ch);
        strict = strict && ideal > impaired;
        min_gap = std::min(min_gap, ideal - impaired);
    }
    result.gap_backscatter =
        ideal_backscatter_rate(params, ch) - backscatter_rate(params, ch);
    result.strict = strict && result.gap_backscatter > 0.0;
    result.min_gap_primary = min_gap;
    return result;
}

}  // namespace ambc::mc
