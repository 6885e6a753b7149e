#ifndef AMBC_CAMPAIGN_HPP
#define AMBC_CAMPAIGN_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "ambc/config.hpp"
#include "ambc/model.hpp"
#include "ambc/montecarlo.hpp"
#include "ambc/waveform.hpp"

namespace ambc::cli {

struct RunOptions {
    unsigned workers = 1;  // 0 = hardware concurrency; never changes outputs
};

struct SweepRow {
    double axis_value = 0.0;
    RateReport report;
    bool theorem1_holds = false;
};

/// Rates at one parameter point, averaged over n_channel_draws channel
/// realizations. Channel draw i always uses the counter stream
/// (seed, channel, i), so sweep rows share channel realizations.
SweepRow compute_point(const CampaignConfig& config, const RunOptions& options);

std::vector<SweepRow> compute_sweep(const CampaignConfig& config,
                                    const RunOptions& options);

/// Sweep CSV: '#'-prefixed resolved-config block, header line, one row per
/// sweep point. Byte-identical for identical (config, seed) at any worker
/// count.
void write_sweep_csv(std::ostream& out, const CampaignConfig& config,
                     const std::vector<SweepRow>& rows);

/// Single-point CSV with the same column layout.
void write_point_csv(std::ostream& out, const CampaignConfig& config,
                     const SweepRow& row);

/// Runs the sweep and writes to config.output_path (standard output when
/// empty). Returns the process exit code.
int run_sweep(const CampaignConfig& config, const RunOptions& options);
int run_rate(const CampaignConfig& config, const RunOptions& options);

/// Verification campaign over the configured draw count: the mutualism
/// inequality, the rate ceilings, ideal-vs-impaired ordering, and gain
/// degradation. Writes one line per property plus an overall verdict; returns
/// 0 when every property holds, 1 on a violation.
int run_validate(const CampaignConfig& config, std::ostream& report,
                 const RunOptions& options);
int run_validate(const CampaignConfig& config, const RunOptions& options);

/// Waveform-level validation CSV: empirical-vs-target rows for the
/// conditional primary SINR, the post-despreading SINR, the synthesized noise
/// variances, and the spreading-gain slope.
void write_waveform_csv(std::ostream& out, const CampaignConfig& config);
int run_waveform(const CampaignConfig& config, const RunOptions& options);

}  // namespace ambc::cli

#endif  // AMBC_CAMPAIGN_HPP
