#include "ambc/campaign.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <ostream>

#include "ambc/analytic.hpp"
#include "ambc/parallel.hpp"

namespace ambc::cli {
namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string fmt_optional(const std::optional<double>& v, const char* absent) {
    return v ? fmt(*v) : absent;
}

double axis_current_value(const CampaignConfig& config) {
    switch (config.sweep.axis) {
        case SweepAxis::p0: return config.p0_mw;
        case SweepAxis::kappa: return config.kappa_p;
        case SweepAxis::spreading: return config.spreading_factor;
        case SweepAxis::beta: return config.beta;
        case SweepAxis::distance: return config.geometry.d_ps_m;
    }
    return 0.0;
}

// Relative standard error beyond which the MC column is flagged per row.
constexpr double kMcStderrWarningFraction = 0.01;

bool mc_warning(const RateReport& report) {
    if (!report.c_p_mc || !report.c_p_mc_stderr) return false;
    return *report.c_p_mc_stderr >
           kMcStderrWarningFraction * std::max(std::fabs(*report.c_p_mc), 1e-300);
}

void write_csv_header(std::ostream& out, const CampaignConfig& config) {
    out << "# format: sweep CSV, resolved config follows\n";
    write_resolved_config(out, config, "# ");
    out << axis_name(config.sweep.axis)
        << ",c_p_coop_analytic,c_p_coop_mc,c_p_mc_stderr,c_p_noncoop,c_s,"
           "c_p_ideal,c_s_ideal,ceiling_p,ceiling_s,theorem1_holds,mc_warning\n";
}

void write_row(std::ostream& out, const SweepRow& row) {
    const RateReport& r = row.report;
    out << fmt(row.axis_value) << ',' << fmt(r.c_p_analytic) << ','
        << fmt_optional(r.c_p_mc, "nan") << ','
        << fmt_optional(r.c_p_mc_stderr, "nan") << ',' << fmt(r.c_p_noncoop)
        << ',' << fmt(r.c_s) << ',' << fmt(r.c_p_ideal) << ','
        << fmt(r.c_s_ideal) << ',' << fmt_optional(r.ceiling_p, "inf") << ','
        << fmt_optional(r.ceiling_s, "inf") << ','
        << (row.theorem1_holds ? '1' : '0') << ','
        << (mc_warning(r) ? '1' : '0') << '\n';
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output path '" + path + "'");
    return out;
}

int run_to_output(const CampaignConfig& config,
                  const std::function<void(std::ostream&)>& writer) {
    if (config.output_path.empty()) {
        writer(std::cout);
    } else {
        auto out = open_output(config.output_path);
        writer(out);
        if (!out) throw ConfigError("write failed on '" + config.output_path + "'");
    }
    return 0;
}

struct PropertyLine {
    std::string text;
    bool failed = false;
};

}  // namespace

SweepRow compute_point(const CampaignConfig& config, const RunOptions& options) {
    const SystemParams params = config.system_params();
    const double kappa = params.impairments.kappa;

    CompensatedSum analytic, noncoop, c_s, ideal_p, ideal_s, ceil_s, mc_mean,
        mc_var;
    bool ceil_s_defined = kappa > 0.0;
    for (std::uint64_t i = 0; i < config.n_channel_draws; ++i) {
        rng::Stream channel_stream(config.seed, rng::stream::channel, i);
        const ChannelState ch =
            mc::sample_channel(config.geometry, config.fading, channel_stream);
        analytic.add(mc::expected_primary_rate(params, ch, config.cs));
        noncoop.add(noncooperation_rate(params, ch));
        c_s.add(backscatter_rate(params, ch));
        ideal_p.add(mc::expected_primary_rate(
            params.with_impairments(ImpairmentLevels::ideal()), ch, config.cs));
        ideal_s.add(ideal_backscatter_rate(params, ch));
        if (ceil_s_defined) {
            if (params.beta * ch.h * ch.g + ch.f > 0.0) {
                ceil_s.add(backscatter_rate_ceiling(params, ch));
            } else {
                ceil_s_defined = false;
            }
        }
        if (config.n_samples > 0) {
            mc::EstimatorOptions est;
            est.chunk_size = config.chunk_size;
            est.workers = options.workers;
            est.index_offset = i * config.n_samples;
            const mc::McEstimate estimate = mc::estimate_primary_rate(
                params, ch, config.cs, config.n_samples, config.seed, est);
            mc_mean.add(estimate.mean);
            mc_var.add(estimate.std_error * estimate.std_error);
        }
    }

    const auto draws = static_cast<double>(config.n_channel_draws);
    SweepRow row;
    row.axis_value = axis_current_value(config);
    row.report.c_p_analytic = analytic.value() / draws;
    row.report.c_p_noncoop = noncoop.value() / draws;
    row.report.c_s = c_s.value() / draws;
    row.report.c_p_ideal = ideal_p.value() / draws;
    row.report.c_s_ideal = ideal_s.value() / draws;
    if (kappa > 0.0) {
        row.report.ceiling_p = primary_rate_ceiling(params);
        if (ceil_s_defined) row.report.ceiling_s = ceil_s.value() / draws;
    }
    if (config.n_samples > 0) {
        row.report.c_p_mc = mc_mean.value() / draws;
        row.report.c_p_mc_stderr = std::sqrt(mc_var.value()) / draws;
    }
    row.theorem1_holds = row.report.c_p_analytic > row.report.c_p_noncoop;
    return row;
}

std::vector<SweepRow> compute_sweep(const CampaignConfig& config,
                                    const RunOptions& options) {
    std::vector<SweepRow> rows;
    for (double value : sweep_values(config.sweep)) {
        CampaignConfig point = apply_axis(config, config.sweep.axis, value);
        SweepRow row = compute_point(point, options);
        row.axis_value = value;
        rows.push_back(row);
    }
    return rows;
}

void write_sweep_csv(std::ostream& out, const CampaignConfig& config,
                     const std::vector<SweepRow>& rows) {
    write_csv_header(out, config);
    for (const SweepRow& row : rows) write_row(out, row);
}

void write_point_csv(std::ostream& out, const CampaignConfig& config,
                     const SweepRow& row) {
    write_csv_header(out, config);
    write_row(out, row);
}

int run_sweep(const CampaignConfig& config, const RunOptions& options) {
    const std::vector<SweepRow> rows = compute_sweep(config, options);
    return run_to_output(config, [&](std::ostream& out) {
        write_sweep_csv(out, config, rows);
    });
}

int run_rate(const CampaignConfig& config, const RunOptions& options) {
    const SweepRow row = compute_point(config, options);
    return run_to_output(config, [&](std::ostream& out) {
        write_point_csv(out, config, row);
    });
}

int run_validate(const CampaignConfig& config, std::ostream& out,
                 const RunOptions& options) {
    (void)options;  // the verification loops are sequential by construction
    const SystemParams params = config.system_params();
    const double kappa = params.impairments.kappa;
    const std::uint64_t draws = config.n_channel_draws;
    std::vector<PropertyLine> lines;

    const auto sample_draw = [&](std::uint64_t i) {
        rng::Stream stream(config.seed, rng::stream::channel, i);
        return mc::sample_channel(config.geometry, config.fading, stream);
    };
    const auto counterexample = [&](std::uint64_t i, const ChannelState& ch) {
        return " counterexample: draw=" + std::to_string(i) + " h=" + fmt(ch.h) +
               " f=" + fmt(ch.f) + " g=" + fmt(ch.g) +
               " seed=" + std::to_string(config.seed);
    };

    {  // cooperative rate strictly above the non-cooperation rate
        double worst = std::numeric_limits<double>::infinity();
        bool failed = false;
        std::string detail;
        for (std::uint64_t i = 0; i < draws && !failed; ++i) {
            const ChannelState ch = sample_draw(i);
            const mc::Theorem1Result res =
                mc::verify_theorem1(params, ch, config.cs, 0, config.seed);
            if (res.boundary) {
                if (res.margin != 0.0) {
                    failed = true;
                    detail = counterexample(i, ch);
                }
                continue;
            }
            worst = std::min(worst, res.margin);
            if (!res.strict) {
                failed = true;
                detail = counterexample(i, ch);
            }
        }
        lines.push_back({"mutualism_margin: draws=" + std::to_string(draws) +
                             " worst_margin_bit_s=" + fmt(worst) +
                             " result=" + (failed ? "FAIL" + detail : "PASS"),
                         failed});
    }

    {  // rate ceilings over an 8-decade power sweep around the configured P0
        if (kappa == 0.0) {
            lines.push_back({"rate_ceilings: result=SKIP (kappa == 0, no finite "
                             "ceiling)",
                             false});
        } else {
            constexpr int kPointsPerDecade = 4;
            constexpr int kDecades = 8;
            std::vector<double> grid;
            for (int i = 0; i <= kDecades * kPointsPerDecade; ++i) {
                grid.push_back(config.p0_mw * 1e-4 *
                               std::pow(10.0, static_cast<double>(i) /
                                                  kPointsPerDecade));
            }
            const ChannelState ch = sample_draw(0);
            const mc::CeilingReport report =
                mc::verify_ceilings(params, ch, grid);
            const bool failed = !(report.all_below && report.monotone &&
                                  report.final_within_fraction);
            lines.push_back(
                {"rate_ceilings: grid_points=" + std::to_string(grid.size()) +
                     " min_margin_p_bit_s=" + fmt(report.min_margin_p) +
                     " min_margin_s_bit_s=" + fmt(report.min_margin_s) +
                     " result=" + (failed ? "FAIL" : "PASS"),
                 failed});
        }
    }

    {  // ideal-hardware rates strictly dominate the impaired ones
        if (kappa == 0.0) {
            lines.push_back({"ideal_dominance: result=BOUNDARY (kappa == 0, "
                             "rates coincide)",
                             false});
        } else {
            double min_gap = std::numeric_limits<double>::infinity();
            bool failed = false;
            std::string detail;
            for (std::uint64_t i = 0; i < draws && !failed; ++i) {
                const ChannelState ch = sample_draw(i);
                const mc::DominanceResult res = mc::verify_ideal_dominance(
                    params, ch, config.cs, 1, config.seed, i);
                min_gap = std::min(min_gap, res.min_gap_primary);
                if (!res.strict) {
                    failed = true;
                    detail = counterexample(i, ch);
                }
            }
            lines.push_back(
                {"ideal_dominance: draws=" + std::to_string(draws) +
                     " min_gap_bit_s=" + fmt(min_gap) +
                     " result=" + (failed ? "FAIL" + detail : "PASS"),
                 failed});
        }
    }

    {  // impairments shrink the mutualism gain
        if (kappa == 0.0) {
            lines.push_back({"gain_degradation: result=SKIP (kappa == 0)", false});
        } else {
            double worst = std::numeric_limits<double>::infinity();
            bool failed = false;
            std::string detail;
            for (std::uint64_t i = 0; i < draws && !failed; ++i) {
                const ChannelState ch = sample_draw(i);
                const ClosedFormInputs inputs = ClosedFormInputs::from(params, ch);
                if (inputs.a == 0.0) continue;
                const ClosedFormInputs ideal{inputs.a, inputs.b, 0.0,
                                             inputs.sigma_sq,
                                             inputs.bandwidth_hz};
                const double margin =
                    mutualism_gain(ideal) - mutualism_gain(inputs);
                worst = std::min(worst, margin);
                if (!(margin > 0.0)) {
                    failed = true;
                    detail = counterexample(i, ch);
                }
            }
            lines.push_back(
                {"gain_degradation: draws=" + std::to_string(draws) +
                     " worst_margin_bit_s=" + fmt(worst) +
                     " result=" + (failed ? "FAIL" + detail : "PASS"),
                 failed});
        }
    }

    bool any_failed = false;
    for (const PropertyLine& line : lines) {
        out << line.text << '\n';
        any_failed = any_failed || line.failed;
    }
    out << "overall: " << (any_failed ? "FAIL" : "PASS") << '\n';
    return any_failed ? 1 : 0;
}

int run_validate(const CampaignConfig& config, const RunOptions& options) {
    if (config.output_path.empty())
        return run_validate(config, std::cout, options);
    auto out = open_output(config.output_path);
    return run_validate(config, out, options);
}

void write_waveform_csv(std::ostream& out, const CampaignConfig& config) {
    const SystemParams params = config.system_params();
    rng::Stream channel_stream(config.seed, rng::stream::channel, 0);
    const ChannelState ch =
        mc::sample_channel(config.geometry, config.fading, channel_stream);
    const std::uint64_t n_blocks = std::max<std::uint64_t>(
        1, config.n_samples / static_cast<std::uint64_t>(params.spreading_factor));

    out << "# format: waveform-validation CSV, resolved config follows\n";
    write_resolved_config(out, config, "# ");
    out << "check,spreading_factor,n_symbols,target,empirical,rel_dev,warning\n";
    const auto row = [&](const char* check, int l, const wf::EmpiricalSinr& s) {
        out << check << ',' << l << ',' << s.n_symbols << ',' << fmt(s.target)
            << ',' << fmt(s.value) << ',' << fmt(s.rel_dev) << ','
            << (s.low_sample_warning ? '1' : '0') << '\n';
    };

    row("primary_sinr", params.spreading_factor,
        wf::run_primary_sinr_campaign(params, ch, 1.0, n_blocks, config.seed));
    row("despread_sinr", params.spreading_factor,
        wf::run_despread_sinr_campaign(params, ch, n_blocks, config.seed));
    const wf::NoiseVarianceReport variances =
        wf::measure_noise_variances(params, ch, 1.0, n_blocks, config.seed);
    row("tau_p_variance", params.spreading_factor, variances.tau_p);
    row("tau_r_variance", params.spreading_factor, variances.tau_r);
    row("w_variance", params.spreading_factor, variances.w);

    constexpr std::array<int, 3> l_values{8, 32, 128};
    const wf::SpreadingGainReport gain = wf::spreading_gain_check(
        params, ch, l_values, config.n_samples, config.seed);
    for (const wf::SpreadingGainPoint& point : gain.points)
        row("despread_sinr", point.spreading_factor, point.sinr);
    std::uint64_t slope_symbols = 0;
    bool slope_warning = false;
    for (const wf::SpreadingGainPoint& point : gain.points) {
        slope_symbols += point.sinr.n_symbols;
        slope_warning = slope_warning || point.sinr.low_sample_warning;
    }
    out << "spreading_slope,0," << slope_symbols << ',' << fmt(1.0) << ','
        << fmt(gain.loglog_slope) << ',' << fmt(std::fabs(gain.loglog_slope - 1.0))
        << ',' << (slope_warning ? '1' : '0') << '\n';
}

int run_waveform(const CampaignConfig& config, const RunOptions& options) {
    (void)options;
    return run_to_output(config, [&](std::ostream& out) {
        write_waveform_csv(out, config);
    });
}

}  // namespace ambc::cli
