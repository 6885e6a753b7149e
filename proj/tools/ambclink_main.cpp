#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ambc/campaign.hpp"
#include "ambc/config.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> draws;
    std::optional<std::string> out;
    unsigned threads = 1;
};

struct SweepArgs {
    std::optional<std::string> axis;
    std::optional<double> from;
    std::optional<double> to;
    std::optional<int> points;
    bool log_scale = false;
};

void add_common_options(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "campaign config file");
    cmd->add_option("--seed", args.seed, "override the base seed");
    cmd->add_option("--samples", args.samples, "override n_samples");
    cmd->add_option("--draws", args.draws, "override n_channel_draws");
    cmd->add_option("--out", args.out, "override the output path");
    cmd->add_option("--threads", args.threads,
                    "worker threads (never changes results)");
}

void add_sweep_options(CLI::App* cmd, SweepArgs& args) {
    cmd->add_option("--axis", args.axis, "sweep axis: p0|kappa|spreading|beta|distance");
    cmd->add_option("--from", args.from, "sweep start");
    cmd->add_option("--to", args.to, "sweep end");
    cmd->add_option("--points", args.points, "sweep point count");
    cmd->add_flag("--log", args.log_scale, "log-spaced sweep");
}

ambc::cli::CampaignConfig resolve_config(const CommonArgs& common,
                                         const SweepArgs* sweep) {
    ambc::cli::CampaignConfig config =
        common.config_path.empty() ? ambc::cli::default_config()
                                   : ambc::cli::load_config(common.config_path);
    if (common.seed) config.seed = *common.seed;
    if (common.samples) config.n_samples = *common.samples;
    if (common.draws) config.n_channel_draws = *common.draws;
    if (common.out) config.output_path = *common.out;
    if (sweep) {
        if (sweep->axis) config.sweep.axis = ambc::cli::axis_from_name(*sweep->axis);
        if (sweep->from) config.sweep.from = *sweep->from;
        if (sweep->to) config.sweep.to = *sweep->to;
        if (sweep->points) config.sweep.points = *sweep->points;
        if (sweep->log_scale) config.sweep.scale = ambc::cli::SweepScale::log;
    }
    config.validate();
    return config;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Rate analysis and link-level simulation for a mutualistic cooperative "
        "ambient-backscatter link under transceiver hardware impairments"};
    app.require_subcommand(1);

    CommonArgs rate_args, sweep_args_common, validate_args, waveform_args;
    SweepArgs sweep_args;

    CLI::App* rate = app.add_subcommand(
        "rate", "rates at a single parameter point (CSV row to stdout)");
    add_common_options(rate, rate_args);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "sweep one axis and emit a CSV of rate rows");
    add_common_options(sweep, sweep_args_common);
    add_sweep_options(sweep, sweep_args);

    CLI::App* validate = app.add_subcommand(
        "validate", "verify the mutualism, ceiling and ordering properties");
    add_common_options(validate, validate_args);

    CLI::App* waveform = app.add_subcommand(
        "waveform", "symbol-level SINR validation against the rate formulas");
    add_common_options(waveform, waveform_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (rate->parsed()) {
            ambc::cli::RunOptions options{rate_args.threads};
            return ambc::cli::run_rate(resolve_config(rate_args, nullptr), options);
        }
        if (sweep->parsed()) {
            ambc::cli::RunOptions options{sweep_args_common.threads};
            return ambc::cli::run_sweep(
                resolve_config(sweep_args_common, &sweep_args), options);
        }
        if (validate->parsed()) {
            ambc::cli::RunOptions options{validate_args.threads};
            return ambc::cli::run_validate(resolve_config(validate_args, nullptr),
                                           options);
        }
        if (waveform->parsed()) {
            ambc::cli::RunOptions options{waveform_args.threads};
            return ambc::cli::run_waveform(resolve_config(waveform_args, nullptr),
                                           options);
        }
    } catch (const ambc::cli::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
