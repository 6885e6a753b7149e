#ifndef AMBC_MONTECARLO_HPP
#define AMBC_MONTECARLO_HPP

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ambc/model.hpp"
#include "ambc/rng.hpp"

namespace ambc::mc {

/// Link distances and path-loss exponents. Each gain composes as
/// small-scale draw x distance^-exponent: h from (d_ps, alpha_ps),
/// f from (d_sr, alpha_sr), g from (d_pr, alpha_pr).
struct Geometry {
    double d_ps_m = 3.0;
    double d_sr_m = 3.0;
    double d_pr_m = 8.0;
    double alpha_ps = 2.7;
    double alpha_sr = 2.7;
    double alpha_pr = 3.0;

    void validate() const;
};

enum class FadingKind {
    rayleigh,    // unit-mean exponential power gains
    fixed_unit,  // deterministic unit small-scale gain
};

struct FadingModel {
    FadingKind kind = FadingKind::rayleigh;
};

enum class CsKind { complex_gaussian, psk, constant_envelope };

/// Backscatter-symbol distribution; every kind has zero mean and unit second
/// moment.
struct CsDistribution {
    CsKind kind = CsKind::complex_gaussian;
    int psk_order = 4;

    static CsDistribution complex_gaussian() { return {CsKind::complex_gaussian, 0}; }
    static CsDistribution psk(int order);
    static CsDistribution constant_envelope() { return {CsKind::constant_envelope, 0}; }

    const char* name() const;

    /// Draw of |c_s|^2: unit-mean exponential for complex_gaussian, exactly 1
    /// for the unit-envelope kinds.
    double sample_mag_sq(rng::Stream& stream) const;

    /// Full complex symbol draw.
    std::complex<double> sample(rng::Stream& stream) const;
};

/// One Monte Carlo expectation estimate. Reproducible: identical
/// (seed, n_samples, chunking) give bit-identical values for any worker count.
struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

struct EstimatorOptions {
    std::uint64_t chunk_size = 4096;  // fixed summation chunking policy
    unsigned workers = 1;             // 0 = hardware concurrency
    std::uint64_t index_offset = 0;   // shifts the per-draw stream indices
};

/// Channel gains drawn as small-scale power draw x distance^-exponent.
ChannelState sample_channel(const Geometry& geometry, const FadingModel& fading,
                            rng::Stream& stream);

/// Averages the conditional primary rate over n_samples draws of |c_s|^2.
/// Draw i uses the counter stream (seed, cs, index_offset + i); chunk sums are
/// compensated and reduced in chunk order.
McEstimate estimate_primary_rate(const SystemParams& params,
                                 const ChannelState& ch,
                                 const CsDistribution& cs,
                                 std::uint64_t n_samples, std::uint64_t seed,
                                 const EstimatorOptions& options = {});

/// Expectation of the conditional rate without sampling: the Proposition-1
/// closed form for complex_gaussian, exact conditional rate at |c_s|^2 = 1 for
/// the unit-envelope kinds. Requires noise_power_mw > 0 for complex_gaussian.
double expected_primary_rate(const SystemParams& params, const ChannelState& ch,
                             const CsDistribution& cs);

struct Theorem1Result {
    double noncoop = 0.0;
    double analytic = 0.0;  // expected cooperative rate (no sampling)
    std::optional<McEstimate> mc;
    double margin = 0.0;  // analytic - noncoop
    bool strict = false;  // margin > 0
    bool boundary = false;  // h*beta*g == 0: equality branch
};

/// Checks that the cooperative primary rate exceeds the non-cooperation rate.
/// n_samples == 0 skips the Monte Carlo estimate.
Theorem1Result verify_theorem1(const SystemParams& params,
                               const ChannelState& ch, const CsDistribution& cs,
                               std::uint64_t n_samples, std::uint64_t seed,
                               const EstimatorOptions& options = {});

struct CeilingPoint {
    double p0_mw = 0.0;
    double c_p = 0.0;
    double c_s = 0.0;
};

struct CeilingReport {
    double ceiling_p = 0.0;
    double ceiling_s = 0.0;
    std::vector<CeilingPoint> points;
    bool all_below = false;
    bool monotone = false;
    bool final_within_fraction = false;
    double fraction = 0.0;
    double min_margin_p = 0.0;  // min over grid of ceiling_p - c_p
    double min_margin_s = 0.0;
};

/// Sweeps P0 over an ascending grid and checks both rates stay under their
/// ceilings, grow monotonically, and the final point lands within the given
/// fraction of each ceiling. Throws std::domain_error for kappa == 0.
CeilingReport verify_ceilings(const SystemParams& params_base,
                              const ChannelState& ch,
                              std::span<const double> p0_grid_mw,
                              double fraction = 0.01);

struct DominanceResult {
    bool strict = false;            // ideal > impaired pointwise on every draw
    bool equality_boundary = false; // kappa == 0: rates coincide
    std::uint64_t n_samples = 0;
    double min_gap_primary = 0.0;   // min over draws of ideal - impaired
    double gap_backscatter = 0.0;
};

/// Paired-sampling check that ideal-hardware rates strictly exceed the
/// impaired ones; both sides of each pair share the same |c_s|^2 draw.
DominanceResult verify_ideal_dominance(const SystemParams& params,
                                       const ChannelState& ch,
                                       const CsDistribution& cs,
                                       std::uint64_t n_samples,
                                       std::uint64_t seed,
                                       std::uint64_t index_offset = 0);

}  // namespace ambc::mc

#endif  // AMBC_MONTECARLO_HPP
