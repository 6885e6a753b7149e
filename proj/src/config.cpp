#include "ambc/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

namespace ambc::cli {
namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigError(where.empty() ? what : where + ": " + what);
}

double parse_double(const std::string& where, const std::string& key,
                    const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(where, "key '" + key + "': cannot parse '" + value + "' as a number");
    }
}

std::uint64_t parse_u64(const std::string& where, const std::string& key,
                        const std::string& value) {
    try {
        std::size_t used = 0;
        if (!value.empty() && value.front() == '-') throw std::invalid_argument(value);
        const std::uint64_t v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        fail(where, "key '" + key + "': cannot parse '" + value +
                        "' as an unsigned integer");
    }
}

int parse_int(const std::string& where, const std::string& key,
              const std::string& value) {
    const std::uint64_t v = parse_u64(where, key, value);
    if (v > 1u << 30) fail(where, "key '" + key + "': value too large");
    return static_cast<int>(v);
}

void check(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

const char* axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::p0: return "p0";
        case SweepAxis::kappa: return "kappa";
        case SweepAxis::spreading: return "spreading";
        case SweepAxis::beta: return "beta";
        case SweepAxis::distance: return "distance";
    }
    return "unknown";
}

SweepAxis axis_from_name(std::string_view name) {
    if (name == "p0") return SweepAxis::p0;
    if (name == "kappa") return SweepAxis::kappa;
    if (name == "spreading" || name == "L") return SweepAxis::spreading;
    if (name == "beta") return SweepAxis::beta;
    if (name == "distance") return SweepAxis::distance;
    throw ConfigError("unknown sweep axis '" + std::string(name) +
                      "' (expected p0, kappa, spreading, beta or distance)");
}

SystemParams CampaignConfig::system_params() const {
    return SystemParams(p0_mw, bandwidth_hz, spreading_factor, beta,
                        noise_power_mw, ImpairmentLevels(kappa_p, kappa_r),
                        block_duration_s);
}

CampaignConfig default_config() { return CampaignConfig{}; }

void CampaignConfig::validate() const {
    check(std::isfinite(p0_mw) && p0_mw > 0.0, "p0_mw = " + format_double(p0_mw) + " out of range (0, inf)");
    check(std::isfinite(bandwidth_hz) && bandwidth_hz > 0.0,
          "bandwidth_hz = " + format_double(bandwidth_hz) + " out of range (0, inf)");
    check(spreading_factor >= 1,
          "spreading_factor = " + std::to_string(spreading_factor) + " out of range [1, inf)");
    check(std::isfinite(beta) && beta >= 0.0 && beta <= 1.0,
          "beta = " + format_double(beta) + " out of range [0, 1]");
    check(std::isfinite(kappa_p) && kappa_p >= 0.0,
          "kappa_p = " + format_double(kappa_p) + " out of range [0, inf)");
    check(std::isfinite(kappa_r) && kappa_r >= 0.0,
          "kappa_r = " + format_double(kappa_r) + " out of range [0, inf)");
    check(std::isfinite(noise_power_mw) && noise_power_mw > 0.0,
          "noise_power_mw = " + format_double(noise_power_mw) + " out of range (0, inf)");
    check(std::isfinite(block_duration_s) && block_duration_s > 0.0,
          "block_duration_s = " + format_double(block_duration_s) + " out of range (0, inf)");
    try {
        geometry.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    check(cs.kind != mc::CsKind::psk || cs.psk_order >= 2,
          "psk_order = " + std::to_string(cs.psk_order) + " out of range [2, inf)");
    check(sweep.points >= 2,
          "sweep_points = " + std::to_string(sweep.points) + " out of range [2, inf)");
    check(sweep.from < sweep.to,
          "sweep_from = " + format_double(sweep.from) + " must be < sweep_to = " +
              format_double(sweep.to));
    if (sweep.scale == SweepScale::log) {
        check(sweep.from > 0.0, "sweep_from = " + format_double(sweep.from) +
                                    " must be > 0 for log spacing");
    }
    switch (sweep.axis) {
        case SweepAxis::p0:
        case SweepAxis::distance:
            check(sweep.from > 0.0, "sweep_from = " + format_double(sweep.from) +
                                        " out of range (0, inf) for axis " +
                                        axis_name(sweep.axis));
            break;
        case SweepAxis::kappa:
            check(sweep.from >= 0.0, "sweep_from = " + format_double(sweep.from) +
                                         " out of range [0, inf) for axis kappa");
            break;
        case SweepAxis::spreading:
            check(sweep.from >= 1.0, "sweep_from = " + format_double(sweep.from) +
                                         " out of range [1, inf) for axis spreading");
            break;
        case SweepAxis::beta:
            check(sweep.from >= 0.0 && sweep.to <= 1.0,
                  "sweep range [" + format_double(sweep.from) + ", " +
                      format_double(sweep.to) + "] out of range [0, 1] for axis beta");
            break;
    }
    check(n_channel_draws >= 1, "n_channel_draws = " +
                                    std::to_string(n_channel_draws) +
                                    " out of range [1, inf)");
    check(chunk_size >= 1,
          "chunk_size = " + std::to_string(chunk_size) + " out of range [1, inf)");
    check(format_version == "1",
          "format_version = '" + format_version + "' not supported (expected '1')");
}

CampaignConfig parse_config(std::istream& input, const std::string& origin) {
    CampaignConfig config;
    std::optional<double> p0_dbm, noise_psd_dbm_hz;
    bool saw_p0_mw = false, saw_noise_power = false;

    std::string line;
    int line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        const std::string where = origin + ":" + std::to_string(line_no);
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            fail(where, "expected 'key = value', got '" + stripped + "'");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) fail(where, "empty key");

        if (key == "p0_mw") {
            config.p0_mw = parse_double(where, key, value);
            saw_p0_mw = true;
        } else if (key == "p0_dbm") {
            p0_dbm = parse_double(where, key, value);
        } else if (key == "bandwidth_hz") {
            config.bandwidth_hz = parse_double(where, key, value);
        } else if (key == "spreading_factor") {
            config.spreading_factor = parse_int(where, key, value);
        } else if (key == "beta") {
            config.beta = parse_double(where, key, value);
        } else if (key == "kappa_p") {
            config.kappa_p = parse_double(where, key, value);
        } else if (key == "kappa_r") {
            config.kappa_r = parse_double(where, key, value);
        } else if (key == "noise_power_mw") {
            config.noise_power_mw = parse_double(where, key, value);
            saw_noise_power = true;
        } else if (key == "noise_psd_dbm_hz") {
            noise_psd_dbm_hz = parse_double(where, key, value);
        } else if (key == "block_duration_s") {
            config.block_duration_s = parse_double(where, key, value);
        } else if (key == "d_ps_m") {
            config.geometry.d_ps_m = parse_double(where, key, value);
        } else if (key == "d_sr_m") {
            config.geometry.d_sr_m = parse_double(where, key, value);
        } else if (key == "d_pr_m") {
            config.geometry.d_pr_m = parse_double(where, key, value);
        } else if (key == "alpha_ps") {
            config.geometry.alpha_ps = parse_double(where, key, value);
        } else if (key == "alpha_sr") {
            config.geometry.alpha_sr = parse_double(where, key, value);
        } else if (key == "alpha_pr") {
            config.geometry.alpha_pr = parse_double(where, key, value);
        } else if (key == "fading") {
            if (value == "rayleigh") config.fading.kind = mc::FadingKind::rayleigh;
            else if (value == "fixed-unit") config.fading.kind = mc::FadingKind::fixed_unit;
            else fail(where, "key 'fading': expected rayleigh or fixed-unit, got '" + value + "'");
        } else if (key == "cs_distribution") {
            if (value == "complex-gaussian") config.cs.kind = mc::CsKind::complex_gaussian;
            else if (value == "psk") config.cs.kind = mc::CsKind::psk;
            else if (value == "constant-envelope") config.cs.kind = mc::CsKind::constant_envelope;
            else fail(where, "key 'cs_distribution': expected complex-gaussian, psk or constant-envelope, got '" + value + "'");
        } else if (key == "psk_order") {
            config.cs.psk_order = parse_int(where, key, value);
        } else if (key == "sweep_axis") {
            try {
                config.sweep.axis = axis_from_name(value);
            } catch (const ConfigError& e) {
                fail(where, e.what());
            }
        } else if (key == "sweep_from") {
            config.sweep.from = parse_double(where, key, value);
        } else if (key == "sweep_to") {
            config.sweep.to = parse_double(where, key, value);
        } else if (key == "sweep_points") {
            config.sweep.points = parse_int(where, key, value);
        } else if (key == "sweep_scale") {
            if (value == "linear") config.sweep.scale = SweepScale::linear;
            else if (value == "log") config.sweep.scale = SweepScale::log;
            else fail(where, "key 'sweep_scale': expected linear or log, got '" + value + "'");
        } else if (key == "n_samples") {
            config.n_samples = parse_u64(where, key, value);
        } else if (key == "n_channel_draws") {
            config.n_channel_draws = parse_u64(where, key, value);
        } else if (key == "seed") {
            config.seed = parse_u64(where, key, value);
        } else if (key == "chunk_size") {
            config.chunk_size = parse_u64(where, key, value);
        } else if (key == "output_path") {
            config.output_path = value;
        } else if (key == "format_version") {
            config.format_version = value;
        } else {
            fail(where, "unknown config key '" + key + "'");
        }
    }

    if (p0_dbm) {
        if (saw_p0_mw)
            fail(origin, "p0_mw and p0_dbm are mutually exclusive");
        config.p0_mw = dbm_to_mw(*p0_dbm);
    }
    if (noise_psd_dbm_hz) {
        if (saw_noise_power)
            fail(origin, "noise_power_mw and noise_psd_dbm_hz are mutually exclusive");
        config.noise_power_mw = dbm_to_mw(*noise_psd_dbm_hz) * config.bandwidth_hz;
    }
    config.validate();
    return config;
}

CampaignConfig parse_config_text(const std::string& text,
                                 const std::string& origin) {
    std::istringstream stream(text);
    return parse_config(stream, origin);
}

CampaignConfig load_config(const std::string& path) {
    std::ifstream stream(path);
    if (!stream) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(stream, path);
}

void write_resolved_config(std::ostream& out, const CampaignConfig& config,
                           std::string_view line_prefix) {
    const auto kv = [&](std::string_view key, const std::string& value) {
        out << line_prefix << key << " = " << value << "\n";
    };
    kv("format_version", config.format_version);
    kv("p0_mw", format_double(config.p0_mw));
    kv("bandwidth_hz", format_double(config.bandwidth_hz));
    kv("spreading_factor", std::to_string(config.spreading_factor));
    kv("beta", format_double(config.beta));
    kv("kappa_p", format_double(config.kappa_p));
    kv("kappa_r", format_double(config.kappa_r));
    kv("noise_power_mw", format_double(config.noise_power_mw));
    kv("block_duration_s", format_double(config.block_duration_s));
    kv("d_ps_m", format_double(config.geometry.d_ps_m));
    kv("d_sr_m", format_double(config.geometry.d_sr_m));
    kv("d_pr_m", format_double(config.geometry.d_pr_m));
    kv("alpha_ps", format_double(config.geometry.alpha_ps));
    kv("alpha_sr", format_double(config.geometry.alpha_sr));
    kv("alpha_pr", format_double(config.geometry.alpha_pr));
    kv("fading", config.fading.kind == mc::FadingKind::rayleigh ? "rayleigh"
                                                                : "fixed-unit");
    kv("cs_distribution", config.cs.name());
    kv("psk_order", std::to_string(config.cs.psk_order));
    kv("sweep_axis", axis_name(config.sweep.axis));
    kv("sweep_from", format_double(config.sweep.from));
    kv("sweep_to", format_double(config.sweep.to));
    kv("sweep_points", std::to_string(config.sweep.points));
    kv("sweep_scale", config.sweep.scale == SweepScale::log ? "log" : "linear");
    kv("n_samples", std::to_string(config.n_samples));
    kv("n_channel_draws", std::to_string(config.n_channel_draws));
    kv("seed", std::to_string(config.seed));
    kv("chunk_size", std::to_string(config.chunk_size));
    kv("output_path", config.output_path);
}

std::string resolved_config_text(const CampaignConfig& config,
                                 std::string_view line_prefix) {
    std::ostringstream out;
    write_resolved_config(out, config, line_prefix);
    return out.str();
}

std::vector<double> sweep_values(const SweepSpec& sweep) {
    std::vector<double> values(static_cast<std::size_t>(sweep.points));
    const auto last = static_cast<double>(sweep.points - 1);
    if (sweep.scale == SweepScale::log) {
        const double log_from = std::log(sweep.from);
        const double log_to = std::log(sweep.to);
        for (int i = 0; i < sweep.points; ++i)
            values[static_cast<std::size_t>(i)] =
                std::exp(log_from + (log_to - log_from) * i / last);
    } else {
        for (int i = 0; i < sweep.points; ++i)
            values[static_cast<std::size_t>(i)] =
                sweep.from + (sweep.to - sweep.from) * i / last;
    }
    values.front() = sweep.from;
    values.back() = sweep.to;
    return values;
}

CampaignConfig apply_axis(const CampaignConfig& config, SweepAxis axis,
                          double value) {
    CampaignConfig out = config;
    switch (axis) {
        case SweepAxis::p0:
            out.p0_mw = value;
            break;
        case SweepAxis::kappa:
            // Fig.-3 convention: one common level assigned to both ends.
            out.kappa_p = value;
            out.kappa_r = value;
            break;
        case SweepAxis::spreading:
            out.spreading_factor = std::max(1, static_cast<int>(std::lround(value)));
            break;
        case SweepAxis::beta:
            out.beta = value;
            break;
        case SweepAxis::distance:
            out.geometry.d_ps_m = value;
            break;
    }
    return out;
}

}  // namespace ambc::cli
