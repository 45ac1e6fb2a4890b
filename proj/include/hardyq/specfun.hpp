#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>

#include "hardyq/errors.hpp"

// Special functions used by the transcendental characterization: log-gamma,
// digamma, the Gauss hypergeometric series, and a fixed Gauss-Legendre rule.
// Everything is templated on the scalar so the profile code can run the same
// formulas in long double when it needs quieter finite differences.

namespace hardyq::specfun {

struct SeriesConfig {
    double rel_tol = 1e-16; // stop once |term| <= rel_tol * |sum|
    int max_terms = 500;
};

template <class Real>
Real log_gamma(Real x) {
    if (!(x > Real(0)))
        throw DomainError("log_gamma: requires x > 0, got " + std::to_string(double(x)));
    return std::lgamma(x);
}

// Digamma via the recurrence psi(x) = psi(x+1) - 1/x until x >= 10, then the
// asymptotic series ln x - 1/(2x) - sum B_{2n}/(2n x^{2n}).
template <class Real>
Real digamma(Real x) {
    if (!(x > Real(0)))
        throw DomainError("digamma: requires x > 0, got " + std::to_string(double(x)));
    Real acc = 0;
    while (x < Real(10)) {
        acc -= Real(1) / x;
        x += Real(1);
    }
    const Real x2 = Real(1) / (x * x);
    // B_2/2, B_4/4, ... B_14/14
    constexpr double k[7] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240,
                             1.0 / 132, -691.0 / 32760, 1.0 / 12};
    Real tail = 0;
    Real p = x2;
    for (double c : k) {
        tail += Real(c) * p;
        p *= x2;
    }
    return acc + std::log(x) - Real(0.5) / x - tail;
}

// Gauss series sum_n (a)_n (b)_n / ((c)_n n!) z^n, accepted on z in [0, 0.75]
// where the profile formulas live (z = sin^2(theta/2) <= 1/2 plus headroom).
// Kahan-compensated so the stopping test is meaningful at rel_tol ~ 1e-16.
template <class Real>
Real hyp2f1(Real a, Real b, Real c, Real z, SeriesConfig cfg = {}) {
    if (!(z >= Real(0) && z <= Real(0.75)))
        throw DomainError("hyp2f1: z outside [0, 0.75], got " + std::to_string(double(z)));
    Real sum = 1, comp = 0, term = 1;
    for (int n = 0; n < cfg.max_terms; ++n) {
        term *= (a + Real(n)) * (b + Real(n)) / ((c + Real(n)) * Real(n + 1)) * z;
        const Real y = term - comp;
        const Real t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (std::abs(term) <= Real(cfg.rel_tol) * std::abs(sum))
            return sum;
    }
    throw NonConvergence("hyp2f1: series did not converge in " +
                         std::to_string(cfg.max_terms) + " terms");
}

// Nodes/weights of the n-point Gauss-Legendre rule on [-1, 1], computed once
// per scalar type by Newton on the Legendre recurrence.
template <class Real, std::size_t N>
struct GaussLegendre {
    std::array<Real, N> node, weight;

    static const GaussLegendre& get() {
        static const GaussLegendre rule = make();
        return rule;
    }

  private:
    static GaussLegendre make() {
        GaussLegendre r;
        const Real pi = std::acos(Real(-1));
        for (std::size_t i = 0; i < N; ++i) {
            // Chebyshev-like initial guess, then Newton on P_N(x)
            Real x = std::cos(pi * (Real(i) + Real(0.75)) / (Real(N) + Real(0.5)));
            Real dp = 0;
            for (int it = 0; it < 100; ++it) {
                Real p0 = 1, p1 = x;
                for (std::size_t k = 2; k <= N; ++k) {
                    const Real p2 = ((2 * Real(k) - 1) * x * p1 - (Real(k) - 1) * p0) / Real(k);
                    p0 = p1;
                    p1 = p2;
                }
                dp = Real(N) * (x * p1 - p0) / (x * x - 1);
                const Real dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < std::numeric_limits<Real>::epsilon() * 4)
                    break;
            }
            r.node[i] = x;
            r.weight[i] = Real(2) / ((1 - x * x) * dp * dp);
        }
        return r;
    }
};

// Integrate fn over [a, b] with the fixed 48-point rule (exact through
// degree 95; the integrands here are analytic so this is effectively exact).
template <class Real, class Fn>
Real gauss48(Fn&& fn, Real a, Real b) {
    const auto& rule = GaussLegendre<Real, 48>::get();
    const Real mid = (a + b) / 2, half = (b - a) / 2;
    Real s = 0;
    for (std::size_t i = 0; i < 48; ++i)
        s += rule.weight[i] * fn(mid + half * rule.node[i]);
    return s * half;
}

} // namespace hardyq::specfun
