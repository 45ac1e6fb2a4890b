#pragma once

// One-signed eigen-profile psi of the weighted sector problem
//
//   -psi'' = c V(theta) psi  on (0, beta),  psi(0) = psi(beta) = 0,
//
// with V = 1/sin^2(theta) near the theta = 0 edge, 1 in the middle wedge, and
// the mirror image near theta = beta. On (0, pi/2] psi is hypergeometric:
//
//   psi = c1 sin^alpha(theta/2) cos^(1-alpha)(theta/2)
//            2F1(1/2, 1/2; alpha + 1/2; sin^2(theta/2)),
//
// on [pi/2, beta - pi/2] it is cos(sqrt(c)(beta/2 - theta)), and the right
// branch mirrors the left. Below the critical opening (c = 1/4 and the two
// local exponents collide) a second, logarithmic solution enters with weight
// c2 so the value and slope still match at theta = pi/2.
//
// Normalization: psi(beta/2) = 1, i.e. the middle branch is exactly the
// cosine above; c1 carries the matching. The theta^alpha coefficient at the
// corner is available as series_scale().

#include "hardyq/constant.hpp"

namespace hardyq {

struct ProfileSolution {
    HardyParams params;
    double c1;     // scale of the hypergeometric branch
    double f_half; // 2F1(1/2, 1/2; alpha+1/2; 1/2), the junction series value
    double c2;     // weight of the second solution; 0 at and above critical

    // lim_{theta -> 0+} psi / theta^alpha = c1 / 2^alpha (first branch term).
    double series_scale() const;
};

ProfileSolution build_profile(double beta);

// Piecewise weight. Exactly 1 on the closed middle range, including both
// junctions. Requires 0 < theta < beta.
double potential_v(double theta, double beta);

// Profile value; theta in [0, beta], zero at both ends by continuity.
double psi(double theta, const ProfileSolution& sol);

// f = psi'/psi, computed from the closed forms (no finite differences).
// Diverges at the ends: requires 0 < theta < beta.
double f_log_deriv(double theta, const ProfileSolution& sol);

// g = f(theta) sin(theta) on (0, pi/2]; extends continuously to alpha at 0.
double g_aux(double theta, const ProfileSolution& sol);

// |psi_h''(theta) + c V(theta) psi(theta)| / |psi(theta)| with the centered
// second difference at step h, evaluated in extended precision so the
// measurement is discretization-limited rather than roundoff-limited.
// The stencil must not straddle a branch junction or leave (0, beta).
double ode_residual(double theta, const ProfileSolution& sol, double h);

} // namespace hardyq
