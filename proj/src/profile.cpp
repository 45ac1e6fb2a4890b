#include "hardyq/profile.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "hardyq/errors.hpp"
#include "hardyq/specfun.hpp"

namespace hardyq {

namespace {

constexpr double kPi = std::numbers::pi;

// All branch formulas templated on the scalar: the public API runs them in
// double; ode_residual re-runs them in long double where the second
// difference would otherwise drown in rounding noise.
template <class Real>
struct ProfileEval {
    Real beta, c, sc, alpha, c1, c2;
    specfun::SeriesConfig cfg;

    ProfileEval(double beta_, double c_, bool subcritical) {
        cfg.rel_tol = sizeof(Real) > sizeof(double) ? 2e-19 : 1e-16;
        beta = Real(beta_);
        c = Real(c_);
        sc = std::sqrt(c);
        alpha = (Real(1) + std::sqrt(std::max(Real(0), Real(1) - 4 * c))) / 2;
        const Real f_half = f2(Real(0.5));
        c1 = std::sqrt(Real(2)) * std::cos(sc * (beta - Real(kPi)) / 2) / f_half;
        c2 = 0;
        if (subcritical) {
            // second-solution weight from slope matching at pi/2:
            // S'(pi/2) = 2F1(3/2,3/2;2;1/2)/(8 sqrt 2), I(1/2) = 0
            const Real sp = specfun::hyp2f1(Real(1.5), Real(1.5), Real(2), Real(0.5), cfg) /
                            (8 * std::sqrt(Real(2)));
            c2 = (c1 * sp - std::sin((beta - Real(kPi)) / 4) / 2) * f_half / std::sqrt(Real(2));
        }
    }

    Real f2(Real z) const { // 2F1(1/2, 1/2; alpha + 1/2; z)
        return specfun::hyp2f1(Real(0.5), Real(0.5), alpha + Real(0.5), z, cfg);
    }

    // Integral of dt/(t (1-t) F(t)^2) from xi to 1/2, F = 2F1(1/2,1/2;1;t).
    // The 1/t pole is split off exactly: the remainder has the analytic
    // integrand -W/(t(1-t)F^2) with W = (1-t)F^2 - 1 expanded through
    // s = F - 1 so no cancellation occurs near t = 0.
    Real log_integral(Real xi) const {
        auto smooth = [this](Real t) {
            const Real f = specfun::hyp2f1(Real(0.5), Real(0.5), Real(1), t, cfg);
            const Real s = f - 1;
            const Real w = -t + 2 * s + s * s - 2 * t * s - t * s * s;
            return -w / (t * (1 - t) * f * f);
        };
        return specfun::gauss48(smooth, xi, Real(0.5)) - std::log(2 * xi);
    }

    // Hypergeometric branch on (0, pi/2]: value and derivative.
    std::pair<Real, Real> left(Real th) const {
        const Real s = std::sin(th / 2), k = std::cos(th / 2);
        const Real xi = s * s;
        const Real f = f2(xi);
        const Real fp = specfun::hyp2f1(Real(1.5), Real(1.5), alpha + Real(1.5), xi, cfg) /
                        (4 * alpha + 2);
        const Real base = std::pow(s, alpha) * std::pow(k, 1 - alpha) * f;
        const Real dlog = alpha / 2 * k / s - (1 - alpha) / 2 * s / k +
                          fp / f * (std::sin(th) / 2);
        if (c2 == Real(0)) {
            const Real p = c1 * base;
            return {p, p * dlog};
        }
        const Real li = log_integral(xi);
        const Real lip = -1 / (xi * (1 - xi) * f * f);
        const Real p = base * (c1 + c2 * li);
        const Real dp = base * dlog * (c1 + c2 * li) + base * c2 * lip * (std::sin(th) / 2);
        return {p, dp};
    }

    Real psi(Real th) const {
        if (th <= Real(0) || th >= beta)
            return 0;
        if (th > beta / 2)
            th = beta - th;
        if (th <= Real(kPi) / 2)
            return left(th).first;
        return std::cos(sc * (beta / 2 - th));
    }

    Real f(Real th) const {
        if (th > beta / 2 && th >= beta - Real(kPi) / 2)
            return -f(beta - th);
        if (th <= Real(kPi) / 2) {
            const auto [p, dp] = left(th);
            return dp / p;
        }
        return sc * std::tan(sc * (beta / 2 - th));
    }

    Real v(Real th) const { return v_weight(th, beta); }

    static Real v_weight(Real th, Real beta) {
        if (th < Real(kPi) / 2)
            return 1 / (std::sin(th) * std::sin(th));
        if (th > beta - Real(kPi) / 2)
            return 1 / (std::sin(beta - th) * std::sin(beta - th));
        return 1;
    }
};

bool is_subcritical(double beta) { return beta < beta_critical(); }

} // namespace

double ProfileSolution::series_scale() const {
    return c1 / std::pow(2.0, params.alpha);
}

ProfileSolution build_profile(double beta) {
    const HardyParams p = solve_c(beta);
    const ProfileEval<double> ev(p.beta, p.c, is_subcritical(beta));
    ProfileSolution sol;
    sol.params = p;
    sol.c1 = ev.c1;
    sol.f_half = ev.f2(0.5);
    sol.c2 = ev.c2;
    return sol;
}

double potential_v(double theta, double beta) {
    if (!(theta > 0.0 && theta < beta))
        throw DomainError("potential_v: theta must be in (0, beta)");
    return ProfileEval<double>::v_weight(theta, beta);
}

double psi(double theta, const ProfileSolution& sol) {
    const double beta = sol.params.beta;
    if (!(theta >= 0.0 && theta <= beta))
        throw DomainError("psi: theta must be in [0, beta]");
    if (theta == 0.0 || theta == beta)
        return 0.0;
    return ProfileEval<double>(beta, sol.params.c, sol.c2 != 0.0).psi(theta);
}

double f_log_deriv(double theta, const ProfileSolution& sol) {
    const double beta = sol.params.beta;
    if (!(theta > 0.0 && theta < beta))
        throw DomainError("f_log_deriv: theta must be in (0, beta)");
    return ProfileEval<double>(beta, sol.params.c, sol.c2 != 0.0).f(theta);
}

double g_aux(double theta, const ProfileSolution& sol) {
    if (!(theta > 0.0 && theta <= kPi / 2))
        throw DomainError("g_aux: theta must be in (0, pi/2]");
    return f_log_deriv(theta, sol) * std::sin(theta);
}

double ode_residual(double theta, const ProfileSolution& sol, double h) {
    const double beta = sol.params.beta;
    if (!(h > 0.0))
        throw DomainError("ode_residual: step must be positive");
    if (!(theta - h > 0.0 && theta + h < beta))
        throw DomainError("ode_residual: stencil leaves (0, beta)");
    for (double j : {kPi / 2, beta - kPi / 2})
        if (theta - h < j && j < theta + h)
            throw DomainError("ode_residual: stencil straddles a branch junction");

    const ProfileEval<long double> ev(beta, sol.params.c, sol.c2 != 0.0);
    const long double t = theta, hh = h;
    const long double p0 = ev.psi(t);
    const long double d2 = (ev.psi(t + hh) - 2 * p0 + ev.psi(t - hh)) / (hh * hh);
    return double(std::abs(d2 + ev.c * ev.v(t) * p0) / std::abs(p0));
}

} // namespace hardyq
