#include "ambc/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ambc {
namespace {

// E1(z) power series around zero, reliable for 0 < z <= 1:
// E1(z) = -gamma - ln z + sum_{k>=1} (-1)^{k+1} z^k / (k * k!).
double e1_series(double z) {
    double sum = 0.0;
    double factorial_term = 1.0;  // (-z)^k / k!
    for (int k = 1; k <= 40; ++k) {
        factorial_term *= -z / k;
        const double term = -factorial_term / k;
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return -std::numbers::egamma - std::log(z) + sum;
}

// exp(z)*E1(z) via the modified Lentz continued fraction
// E1(z) = exp(-z) / (z + 1 - 1/(z + 3 - 4/(z + 5 - 9/(...)))), for z > 1.
double e1_scaled_continued_fraction(double z) {
    constexpr double tiny = 1e-300;
    double b = z + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double value = d;
    for (int k = 1; k <= 1000; ++k) {
        const double a = -static_cast<double>(k) * k;
        b += 2.0;
        d = a * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + a / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        value *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return value;
}

// exp(z)*E1(z) asymptotic series sum_k (-1)^k k! / z^{k+1}, truncated at the
// smallest term; relative error below 1e-15 for z > 40.
double e1_scaled_asymptotic(double z) {
    double term = 1.0 / z;
    double sum = term;
    double prev_mag = std::fabs(term);
    for (int k = 1; k <= 200; ++k) {
        term *= -static_cast<double>(k) / z;
        if (std::fabs(term) >= prev_mag) break;
        sum += term;
        prev_mag = std::fabs(term);
        if (prev_mag < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
}

// exp(z)*E1(z) on z > 0; the stable core shared by Ei and the scaled product.
double e1_scaled(double z) {
    if (std::isinf(z)) return 0.0;
    if (z <= 1.0) return std::exp(z) * e1_series(z);
    if (z <= 40.0) return e1_scaled_continued_fraction(z);
    return e1_scaled_asymptotic(z);
}

void require(bool ok, const std::string& message) {
    if (!ok) throw std::invalid_argument(message);
}

}  // namespace

double exp_integral_ei(double x) {
    if (!(x < 0.0))
        throw std::domain_error("exp_integral_ei requires x < 0");
    const double z = -x;
    if (z <= 1.0) return -e1_series(z);
    // Ei(x) = -exp(-z) * (exp(z)E1(z)); underflows to -0 for z beyond ~745.
    return -std::exp(-z) * e1_scaled(z);
}

double scaled_ei_product(double z) {
    if (!(z > 0.0))
        throw std::domain_error("scaled_ei_product requires z > 0");
    return e1_scaled(z);
}

ClosedFormInputs::ClosedFormInputs(double a_, double b_, double kappa_,
                                   double sigma_sq_, double bandwidth_hz_)
    : a(a_), b(b_), kappa(kappa_), sigma_sq(sigma_sq_),
      bandwidth_hz(bandwidth_hz_) {
    require(std::isfinite(a) && a >= 0.0, "closed-form input a must be >= 0");
    require(std::isfinite(b) && b >= 0.0, "closed-form input b must be >= 0");
    require(std::isfinite(kappa) && kappa >= 0.0,
            "closed-form input kappa must be >= 0");
    require(std::isfinite(sigma_sq) && sigma_sq > 0.0,
            "closed-form input sigma_sq must be > 0");
    require(std::isfinite(bandwidth_hz) && bandwidth_hz > 0.0,
            "closed-form input bandwidth_hz must be > 0");
}

ClosedFormInputs ClosedFormInputs::from(const SystemParams& params,
                                        const ChannelState& ch) {
    return {params.p0_mw * ch.h * params.beta * ch.g, params.p0_mw * ch.f,
            params.impairments.kappa, params.noise_power_mw,
            params.bandwidth_hz};
}

double primary_rate_closed_form(const ClosedFormInputs& in) {
    const double noncoop =
        in.bandwidth_hz *
        std::log2(1.0 + in.b / (in.b * in.kappa + in.sigma_sq));
    if (in.a == 0.0) return noncoop;  // analytic limit: Ei terms cancel
    return noncoop + mutualism_gain(in);
}

double mutualism_gain(const ClosedFormInputs& in) {
    require(in.a > 0.0, "mutualism_gain requires a > 0");
    const double scale = in.bandwidth_hz / std::numbers::ln2;
    if (in.kappa > 0.0) {
        const double u1 = (in.b + in.b * in.kappa + in.sigma_sq) /
                          (in.a * in.kappa + in.a);
        const double u2 = (in.b * in.kappa + in.sigma_sq) / (in.a * in.kappa);
        // u1 < u2 always (they differ by sigma_sq/(a*kappa*(1+kappa))), and
        // the scaled product is strictly decreasing, so the gain is positive.
        return scale * (scaled_ei_product(u1) - scaled_ei_product(u2));
    }
    return scale * scaled_ei_product((in.b + in.sigma_sq) / in.a);
}

bool gain_degradation_check(const ClosedFormInputs& in) {
    if (in.kappa == 0.0) return false;
    const ClosedFormInputs ideal{in.a, in.b, 0.0, in.sigma_sq, in.bandwidth_hz};
    return mutualism_gain(ideal) > mutualism_gain(in);
}

}  // namespace ambc
