#ifndef AMBC_ANALYTIC_HPP
#define AMBC_ANALYTIC_HPP

#include "ambc/model.hpp"

namespace ambc {

/// Exponential integral Ei(x) for strictly negative x. Strictly negative and
/// strictly increasing on its domain; relative error <= 1e-10 over
/// [-700, -1e-8]. Returns -0.0 once exp(x) underflows. Throws
/// std::domain_error for x >= 0.
double exp_integral_ei(double x);

/// -exp(z)*Ei(-z) for z > 0, computed without ever forming the overflowing
/// exp(z) factor. Strictly positive and strictly decreasing; tends to 1/z for
/// large z. Throws std::domain_error for z <= 0.
double scaled_ei_product(double z);

/// Effective parameters of the ergodic-rate closed form: a = P0*h*beta*g,
/// b = P0*f.
struct ClosedFormInputs {
    double a;
    double b;
    double kappa;
    double sigma_sq;
    double bandwidth_hz;

    ClosedFormInputs(double a, double b, double kappa, double sigma_sq,
                     double bandwidth_hz);
    static ClosedFormInputs from(const SystemParams& params,
                                 const ChannelState& ch);
};

/// Distribution of the backscatter symbol under which primary_rate_closed_form
/// is exact; emitted alongside results that rely on it.
inline constexpr const char* kClosedFormCsAssumption = "complex-gaussian";

/// Ergodic primary rate in bit/s for a zero-mean unit-variance symmetric
/// complex Gaussian backscatter symbol (so |c_s|^2 is unit-mean exponential).
/// a == 0 degenerates to the non-cooperation rate (the analytic limit).
double primary_rate_closed_form(const ClosedFormInputs& inputs);

/// primary_rate_closed_form minus the non-cooperation rate, computed directly
/// from the two scaled-Ei terms so the difference never suffers cancellation.
/// Strictly positive for a > 0. Requires a > 0.
double mutualism_gain(const ClosedFormInputs& inputs);

/// True when the ideal-hardware mutualism gain at (a, b, sigma_sq) strictly
/// exceeds the gain at the inputs' kappa. False at kappa == 0 (equal gains).
bool gain_degradation_check(const ClosedFormInputs& inputs);

}  // namespace ambc

#endif  // AMBC_ANALYTIC_HPP
