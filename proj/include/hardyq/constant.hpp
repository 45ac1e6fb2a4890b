#pragma once

// Exact Hardy constant of a plane sector of opening beta, via the
// transcendental equation
//
//   G(x, beta) = (1/2) (1-x^2)^{1/4} tan^{1/2}( sqrt(1-x^2) (beta-pi)/4 )
//                - Gamma((3+x)/4) / Gamma((1+x)/4) = 0,
//
// whose root x in [0,1) gives c = (1-x^2)/4. Below the critical opening
// beta_cr the constant is exactly 1/4.

namespace hardyq {

struct HardyParams {
    double beta;  // sector opening, pi < beta <= 2 pi
    double c;     // Hardy constant, c in [c_{2pi}, 1/4]
    double x;     // root of G(. , beta); x = sqrt(1 - 4c), 0 below critical
    double alpha; // decay exponent at the corner, alpha = (1 + x)/2
};

// Left side of the characterization; requires sqrt(1-x^2)(beta-pi)/4 < pi/2
// so the tangent is evaluated before its pole.
double g_implicit(double x, double beta);

// Largest opening with constant exactly 1/4:
//   beta_cr = pi + 4 atan( 4 (Gamma(3/4)/Gamma(1/4))^2 ).
// Computed once, cached, safe under concurrent first call.
double beta_critical();

// Hardy constant of the sector of opening beta (pi < beta <= 2 pi).
// Exactly c = 1/4 for beta <= beta_cr; otherwise the root of G is located by
// a safeguarded Newton iteration inside [0, 1 - 1e-9] to |G| < 1e-13.
HardyParams solve_c(double beta);

// alpha = (1 + sqrt(1 - 4c))/2 for c in (0, 1/4].
double alpha_from_c(double c);

} // namespace hardyq
