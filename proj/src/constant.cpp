#include "hardyq/constant.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hardyq/errors.hpp"
#include "hardyq/specfun.hpp"

namespace hardyq {

namespace {

constexpr double kPi = std::numbers::pi;

// Gamma((3+x)/4) / Gamma((1+x)/4) through log space (both arguments positive
// for x in [0, 1)).
double gamma_ratio(double x) {
    using specfun::log_gamma;
    return std::exp(log_gamma((3.0 + x) / 4.0) - log_gamma((1.0 + x) / 4.0));
}

// d/dx of g_implicit, used by the Newton step. The gamma ratio differentiates
// through digamma; the tangent part through the chain rule on s = sqrt(1-x^2).
double g_implicit_dx(double x, double beta) {
    using specfun::digamma;
    const double s2 = 1.0 - x * x;
    const double s = std::sqrt(s2);
    const double arg = s * (beta - kPi) / 4.0;
    const double t = std::tan(arg);
    const double sqt = std::sqrt(t);
    // first term: (1/2) s2^{1/4} sqrt(tan(arg))
    const double d_s2_pow = 0.25 * std::pow(s2, -0.75) * (-2.0 * x);
    const double darg = (beta - kPi) / 4.0 * (-x / s);
    const double dt = (1.0 + t * t) * darg;
    const double d_first = 0.5 * (d_s2_pow * sqt + std::pow(s2, 0.25) * dt / (2.0 * sqt));
    const double r = gamma_ratio(x);
    const double d_ratio = r * (digamma((3.0 + x) / 4.0) - digamma((1.0 + x) / 4.0)) / 4.0;
    return d_first - d_ratio;
}

} // namespace

double g_implicit(double x, double beta) {
    if (!(x >= 0.0 && x < 1.0))
        throw DomainError("g_implicit: x must be in [0, 1), got " + std::to_string(x));
    const double s2 = 1.0 - x * x;
    const double arg = std::sqrt(s2) * (beta - kPi) / 4.0;
    if (!(arg < kPi / 2.0))
        throw DomainError("g_implicit: tangent argument must stay below pi/2");
    if (!(arg >= 0.0))
        throw DomainError("g_implicit: requires beta >= pi");
    return 0.5 * std::pow(s2, 0.25) * std::sqrt(std::tan(arg)) - gamma_ratio(x);
}

double beta_critical() {
    static const double value = [] {
        using specfun::log_gamma;
        const double rho = std::exp(log_gamma(0.75) - log_gamma(0.25));
        return kPi + 4.0 * std::atan(4.0 * rho * rho);
    }();
    return value;
}

HardyParams solve_c(double beta) {
    if (!(beta > kPi && beta <= 2.0 * kPi))
        throw DomainError("solve_c: beta must be in (pi, 2 pi], got " + std::to_string(beta));
    if (beta <= beta_critical())
        return HardyParams{beta, 0.25, 0.0, 0.5};

    // G(0, beta) > 0 above the critical opening and G -> -1/sqrt(pi) as
    // x -> 1, so the root is bracketed in [0, 1 - 1e-9].
    double lo = 0.0, hi = 1.0 - 1e-9;
    double flo = g_implicit(lo, beta);
    double x = 0.5, fx = g_implicit(x, beta);
    for (int it = 0; it < 200; ++it) {
        if (std::abs(fx) < 1e-13)
            break;
        if ((fx > 0) == (flo > 0)) {
            lo = x;
            flo = fx;
        } else {
            hi = x;
        }
        double step = fx / g_implicit_dx(x, beta);
        double xn = x - step;
        if (!(xn > lo && xn < hi))
            xn = 0.5 * (lo + hi); // Newton left the bracket: bisect instead
        x = xn;
        fx = g_implicit(x, beta);
    }
    if (std::abs(fx) >= 1e-13)
        throw NonConvergence("solve_c: root polish stalled at |G| = " + std::to_string(std::abs(fx)));
    const double c = (1.0 - x * x) / 4.0;
    return HardyParams{beta, c, x, (1.0 + x) / 2.0};
}

double alpha_from_c(double c) {
    if (!(c > 0.0 && c <= 0.25))
        throw DomainError("alpha_from_c: c must be in (0, 1/4], got " + std::to_string(c));
    return 0.5 * (1.0 + std::sqrt(1.0 - 4.0 * c));
}

} // namespace hardyq
