#ifndef AMBC_CONFIG_HPP
#define AMBC_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ambc/model.hpp"
#include "ambc/montecarlo.hpp"

namespace ambc::cli {

/// Configuration problem (parse failure, bound violation, bad output path).
/// Maps to process exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class SweepAxis { p0, kappa, spreading, beta, distance };
enum class SweepScale { linear, log };

const char* axis_name(SweepAxis axis);
SweepAxis axis_from_name(std::string_view name);

struct SweepSpec {
    SweepAxis axis = SweepAxis::p0;
    double from = 0.1;
    double to = 100.0;
    int points = 50;
    SweepScale scale = SweepScale::log;
};

/// Full campaign description: scenario parameters, sweep plan, sampling
/// budgets, and output destination. The defaults reproduce the reference
/// simulation setup.
struct CampaignConfig {
    double p0_mw = 3.0;
    double bandwidth_hz = 1e6;
    int spreading_factor = 128;
    double beta = 0.8;
    double kappa_p = 0.1;
    double kappa_r = 0.1;
    double noise_power_mw = 1e-6;  // -120 dBm/Hz PSD x 1 MHz
    double block_duration_s = 1.0;
    mc::Geometry geometry;
    mc::FadingModel fading;
    mc::CsDistribution cs;
    SweepSpec sweep;
    std::uint64_t n_samples = 1000000;      // inner c_s draws per channel
    std::uint64_t n_channel_draws = 1;      // outer channel realizations
    std::uint64_t seed = 1;
    std::uint64_t chunk_size = 4096;        // summation chunking policy
    std::string output_path;                // empty = standard output
    std::string format_version = "1";

    SystemParams system_params() const;
    void validate() const;
};

CampaignConfig default_config();

/// Parses the flat key-value format; unknown keys and bound violations raise
/// ConfigError naming the offending key.
CampaignConfig parse_config(std::istream& input, const std::string& origin);
CampaignConfig parse_config_text(const std::string& text,
                                 const std::string& origin = "<string>");
CampaignConfig load_config(const std::string& path);

/// Writes every resolved key, one per line prefixed by line_prefix; with the
/// prefix stripped the lines reload to an equivalent config.
void write_resolved_config(std::ostream& out, const CampaignConfig& config,
                           std::string_view line_prefix);
std::string resolved_config_text(const CampaignConfig& config,
                                 std::string_view line_prefix = "");

/// The axis grid implied by the sweep spec (log or linear spacing).
std::vector<double> sweep_values(const SweepSpec& sweep);

/// Copy of the config with the sweep axis applied at the given value.
CampaignConfig apply_axis(const CampaignConfig& config, SweepAxis axis,
                          double value);

}  // namespace ambc::cli

#endif  // AMBC_CONFIG_HPP
