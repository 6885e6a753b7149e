#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ambc/analytic.hpp"
#include "ambc/montecarlo.hpp"

using namespace ambc;
using namespace ambc::mc;

namespace {

SystemParams reference_params() {
    return SystemParams(3.0, 1e6, 128, 0.8, 1e-6, ImpairmentLevels(0.1, 0.1));
}

}  // namespace

TEST_CASE("sample_channel") {
    SUBCASE("fixed-unit fading at unit distances is the identity") {
        Geometry geometry{1.0, 1.0, 1.0, 2.7, 2.7, 3.0};
        rng::Stream stream(7, rng::stream::channel, 0);
        const ChannelState ch =
            sample_channel(geometry, {FadingKind::fixed_unit}, stream);
        CHECK(ch.h == 1.0);
        CHECK(ch.f == 1.0);
        CHECK(ch.g == 1.0);
    }

    SUBCASE("power-law path loss") {
        Geometry geometry;  // 3 m / 3 m / 8 m, exponents 2.7 / 2.7 / 3
        rng::Stream stream(7, rng::stream::channel, 0);
        const ChannelState ch =
            sample_channel(geometry, {FadingKind::fixed_unit}, stream);
        CHECK(ch.h == doctest::Approx(0.051495895196885531).epsilon(1e-14));
        CHECK(ch.f == doctest::Approx(0.051495895196885531).epsilon(1e-14));
        CHECK(ch.g == doctest::Approx(0.001953125).epsilon(1e-14));
    }

    SUBCASE("rayleigh small-scale power is unit mean") {
        Geometry geometry{1.0, 1.0, 1.0, 2.7, 2.7, 3.0};
        double sum_h = 0.0, sum_f = 0.0, sum_g = 0.0;
        const int n = 1000000;
        for (int i = 0; i < n; ++i) {
            rng::Stream stream(11, rng::stream::channel, static_cast<std::uint64_t>(i));
            const ChannelState ch =
                sample_channel(geometry, {FadingKind::rayleigh}, stream);
            sum_h += ch.h;
            sum_f += ch.f;
            sum_g += ch.g;
        }
        CHECK(sum_h / n == doctest::Approx(1.0).epsilon(0.01));
        CHECK(sum_f / n == doctest::Approx(1.0).epsilon(0.01));
        CHECK(sum_g / n == doctest::Approx(1.0).epsilon(0.01));
    }

    SUBCASE("invalid geometry rejected") {
        Geometry geometry;
        geometry.d_pr_m = 0.0;
        rng::Stream stream(7, rng::stream::channel, 0);
        CHECK_THROWS_AS(sample_channel(geometry, {FadingKind::fixed_unit}, stream),
                        std::invalid_argument);
    }
}

TEST_CASE("cs distributions have zero mean and unit second moment") {
    const int n = 200000;
    for (const CsDistribution& dist :
         {CsDistribution::complex_gaussian(), CsDistribution::psk(4),
          CsDistribution::constant_envelope()}) {
        std::complex<double> mean{0.0, 0.0};
        double second = 0.0;
        for (int i = 0; i < n; ++i) {
            rng::Stream stream(3, rng::stream::cs, static_cast<std::uint64_t>(i));
            const std::complex<double> c = dist.sample(stream);
            mean += c;
            second += std::norm(c);
        }
        CHECK(std::abs(mean) / n < 0.01);
        CHECK(second / n == doctest::Approx(1.0).epsilon(0.01));
    }
    CHECK_THROWS_AS(CsDistribution::psk(1), std::invalid_argument);
}

TEST_CASE("estimate_primary_rate") {
    const SystemParams params(1.0, 1.0, 128, 1.0, 1.0, ImpairmentLevels(0, 0));
    const ChannelState ch{1.0, 1.0, 1.0};

    SUBCASE("constant envelope is the conditional rate with zero spread") {
        const McEstimate est = estimate_primary_rate(
            params, ch, CsDistribution::constant_envelope(), 1000, 5);
        CHECK(est.mean == primary_rate_conditional(1.0, params, ch));
        CHECK(est.std_error == 0.0);
        CHECK(est.n_samples == 1000);
        CHECK(est.seed == 5);
    }

    SUBCASE("single sample equals the single drawn conditional rate") {
        const McEstimate est = estimate_primary_rate(
            params, ch, CsDistribution::complex_gaussian(), 1, 17);
        rng::Stream stream(17, rng::stream::cs, 0);
        const double expected = primary_rate_conditional(
            CsDistribution::complex_gaussian().sample_mag_sq(stream), params, ch);
        CHECK(est.mean == expected);
        CHECK(est.std_error == 0.0);
    }

    SUBCASE("gaussian c_s converges to the closed form") {
        const McEstimate est = estimate_primary_rate(
            params, ch, CsDistribution::complex_gaussian(), 1000000, 29);
        const double closed = primary_rate_closed_form({1.0, 1.0, 0.0, 1.0, 1.0});
        CHECK(closed == doctest::Approx(1.5212870037159069).epsilon(1e-12));
        CHECK(std::fabs(est.mean - closed) <= 3.0 * est.std_error);
    }

    SUBCASE("std_error matches a direct recomputation") {
        const McEstimate est = estimate_primary_rate(
            params, ch, CsDistribution::complex_gaussian(), 4000, 3);
        double sum = 0.0, sum_sq = 0.0;
        for (std::uint64_t i = 0; i < 4000; ++i) {
            rng::Stream stream(3, rng::stream::cs, i);
            const double r = primary_rate_conditional(stream.exponential(), params, ch);
            sum += r;
            sum_sq += r * r;
        }
        const double mean = sum / 4000;
        const double sd = std::sqrt((sum_sq - 4000 * mean * mean) / 3999);
        CHECK(est.mean == doctest::Approx(mean).epsilon(1e-12));
        CHECK(est.std_error == doctest::Approx(sd / std::sqrt(4000.0)).epsilon(1e-9));
    }

    SUBCASE("bit-identical across worker counts and repeated runs") {
        EstimatorOptions serial;
        serial.workers = 1;
        EstimatorOptions threaded;
        threaded.workers = 4;
        const McEstimate a = estimate_primary_rate(
            params, ch, CsDistribution::complex_gaussian(), 100000, 41, serial);
        const McEstimate b = estimate_primary_rate(
            params, ch, CsDistribution::complex_gaussian(), 100000, 41, threaded);
        const McEstimate c = estimate_primary_rate(
            params, ch, CsDistribution::complex_gaussian(), 100000, 41, threaded);
        CHECK(a.mean == b.mean);
        CHECK(a.std_error == b.std_error);
        CHECK(b.mean == c.mean);
        const McEstimate other = estimate_primary_rate(
            params, ch, CsDistribution::complex_gaussian(), 100000, 42, serial);
        CHECK(a.mean != other.mean);
    }

    SUBCASE("rejects n_samples == 0") {
        CHECK_THROWS_AS(estimate_primary_rate(
                            params, ch, CsDistribution::complex_gaussian(), 0, 1),
                        std::invalid_argument);
    }
}

TEST_CASE("Jensen ordering: estimate below the mean-argument bound") {
    const SystemParams params = reference_params();
    rng::Stream stream(13, rng::stream::channel, 0);
    const ChannelState ch = sample_channel({}, {FadingKind::rayleigh}, stream);
    const McEstimate est = estimate_primary_rate(
        params, ch, CsDistribution::complex_gaussian(), 200000, 13);
    const double mean_arg = ch.h * params.beta * ch.g * 1.0 + ch.f;
    const double bound =
        params.bandwidth_hz *
        std::log2(1.0 + mean_arg / (mean_arg * params.impairments.kappa +
                                    params.noise_power_mw / params.p0_mw));
    CHECK(est.mean <= bound);
}

TEST_CASE("verify_theorem1") {
    const SystemParams params = reference_params();

    SUBCASE("equality branch at h*beta*g = 0") {
        const Theorem1Result res = verify_theorem1(
            params, ChannelState{0.0, 0.05, 0.001},
            CsDistribution::complex_gaussian(), 0, 1);
        CHECK(res.boundary);
        CHECK(res.margin == 0.0);
        CHECK_FALSE(res.strict);
    }

    SUBCASE("strict inequality on reference parameters, with MC agreement") {
        rng::Stream stream(19, rng::stream::channel, 4);
        const ChannelState ch = sample_channel({}, {FadingKind::rayleigh}, stream);
        const Theorem1Result res = verify_theorem1(
            params, ch, CsDistribution::complex_gaussian(), 200000, 19);
        CHECK(res.strict);
        CHECK(res.margin > 0.0);
        CHECK(res.analytic > res.noncoop);
        REQUIRE(res.mc.has_value());
        CHECK(std::fabs(res.mc->mean - res.analytic) <= 4.0 * res.mc->std_error);
    }

    SUBCASE("holds across random draws for every c_s kind") {
        for (const CsDistribution& dist :
             {CsDistribution::complex_gaussian(), CsDistribution::psk(8),
              CsDistribution::constant_envelope()}) {
            for (std::uint64_t i = 0; i < 200; ++i) {
                rng::Stream stream(23, rng::stream::channel, i);
                const ChannelState ch =
                    sample_channel({}, {FadingKind::rayleigh}, stream);
                if (ch.h * params.beta * ch.g == 0.0) continue;
                const Theorem1Result res =
                    verify_theorem1(params, ch, dist, 0, 23);
                CHECK(res.strict);
            }
        }
    }
}

TEST_CASE("verify_ceilings") {
    const SystemParams params = reference_params();
    const ChannelState ch{0.051495895196885531, 0.051495895196885531, 0.001953125};

    SUBCASE("eight-decade sweep stays below and reaches the ceilings") {
        std::vector<double> grid;
        for (int i = 0; i <= 32; ++i) grid.push_back(1e-2 * std::pow(10.0, i / 4.0));
        const CeilingReport report = verify_ceilings(params, ch, grid, 0.01);
        CHECK(report.all_below);
        CHECK(report.monotone);
        CHECK(report.final_within_fraction);
        CHECK(report.ceiling_p == primary_rate_ceiling(params));
        CHECK(report.ceiling_s == backscatter_rate_ceiling(params, ch));
        CHECK(report.points.size() == grid.size());
        CHECK(report.min_margin_p > 0.0);
        CHECK(report.min_margin_s > 0.0);
    }

    SUBCASE("rejects kappa == 0 and unsorted grids") {
        const std::vector<double> grid{1.0, 10.0};
        CHECK_THROWS_AS(
            verify_ceilings(params.with_impairments(ImpairmentLevels::ideal()),
                            ch, grid),
            std::domain_error);
        const std::vector<double> bad{10.0, 1.0};
        CHECK_THROWS_AS(verify_ceilings(params, ch, bad), std::invalid_argument);
    }
}

TEST_CASE("verify_ideal_dominance") {
    const SystemParams params = reference_params();
    rng::Stream stream(31, rng::stream::channel, 2);
    const ChannelState ch = sample_channel({}, {FadingKind::rayleigh}, stream);

    SUBCASE("strict pointwise dominance at kappa > 0") {
        const DominanceResult res = verify_ideal_dominance(
            params, ch, CsDistribution::complex_gaussian(), 5000, 31);
        CHECK(res.strict);
        CHECK(res.min_gap_primary > 0.0);
        CHECK(res.gap_backscatter > 0.0);
        CHECK(res.n_samples == 5000);
    }

    SUBCASE("kappa == 0 reports the equality boundary") {
        const DominanceResult res = verify_ideal_dominance(
            params.with_impairments(ImpairmentLevels::ideal()), ch,
            CsDistribution::complex_gaussian(), 100, 31);
        CHECK(res.equality_boundary);
        CHECK_FALSE(res.strict);
    }
}
