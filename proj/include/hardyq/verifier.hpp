#pragma once

// Numerical margin checks: monotonicity and comparison inequalities of the
// eigen-profile's logarithmic derivative, the two-parameter trigonometric
// bounds behind the decomposition argument, and the sign of the comparison
// flux along the equidistance curve of a classified quadrilateral. Each check
// reports the most negative sampled value of a quantity asserted nonnegative.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hardyq/geometry.hpp"
#include "hardyq/profile.hpp"

namespace hardyq {

struct CheckReport {
    std::string name;
    std::vector<std::size_t> grid; // grid sizes, in sampling order
    double min_margin = 0;
    std::vector<double> worst_point; // parameters at the minimum
    double tol = 0;
    bool passed = false;            // min_margin >= -tol
    std::uint64_t seed = 0;         // 0 for deterministic grids
};

// g decreasing on (0, pi/2]: margin = min over consecutive samples of
// g(theta_i) - g(theta_{i+1}).
CheckReport check_lemma4(double beta, int n);

// (2+cos gamma)/(1+sin^2 gamma) f(theta1) >= f(pi/2) for gamma in [pi/2, pi],
// cot(theta1) = sin(gamma).
CheckReport check_lemma5(double beta, int n);

// f(theta1) >= f(theta)(1+cos^2(theta+gamma))/(2+sin(theta+gamma)) over
// gamma in [pi/2, pi] x theta in [pi/2, 3pi/2 - gamma],
// cot(theta1) = -cos(theta+gamma).
CheckReport check_lemma6(double beta, int m, int n);

// Three trigonometric bracket bounds over (omega, theta) windows:
//   (i)   g(theta) cos(theta+omega) + alpha cos(omega)        on [0,pi/4]x(0,pi/2]
//   (ii)  f(theta) cos(theta+omega) + alpha [1+sin(theta+omega)]
//         on [3pi/2-beta, 2pi-beta] x [pi/2, beta-pi/2]
//   (iii) -f(theta) cos(theta+omega) + alpha [1-sin(theta+omega)]
//         on [0, 2pi-beta] x [pi/2, beta-pi/2]
// One report; worst_point = {subcheck, omega, theta}.
CheckReport check_lemma7(double beta, int m, int n);

// Comparison-flux sign along the equidistance curve: per segment the display
// bracket (positive prefactors dropped), plus the splitter contribution for
// obtuse-at-A quadrilaterals. worst_point = {segment index (4 = splitter),
// theta or splitter parameter}.
CheckReport boundary_flux(const Quadrilateral& q, int n_per_segment);

// The bracket sampled by boundary_flux on one segment, exposed for direct
// cross-checks against the field-jump form.
double flux_integrand(const Quadrilateral& q, const GammaCurve& gc,
                      const ProfileSolution& sol, std::size_t segment_index,
                      double theta);

// Splitter bracket at parameter t in (0,1) along S -> B, scaled by the local
// edge distance: f(theta1) (d/r1) cos(theta1 + delta/2) - (1/2) grad(d) . nu.
double splitter_integrand(const Quadrilateral& q, const GammaCurve& gc,
                          const ProfileSolution& sol, double t);

// Comparison fields entering the flux, exposed so finite differences of the
// logarithms can validate the analytic gradients.
double log_field_minus(Vec2 p, const ProfileSolution& sol);
Vec2 grad_log_field_minus(Vec2 p, const ProfileSolution& sol);

// expo * log(distance to the supporting line of the edge)
double log_field_edge(Vec2 p, const Quadrilateral& q, NearPlus which, double expo);
Vec2 grad_log_field_edge(Vec2 p, const Quadrilateral& q, NearPlus which, double expo);

// profile evaluated on the auxiliary-frame angle (obtuse-at-A quadrilaterals)
double log_field_aux(Vec2 p, const Quadrilateral& q, const ProfileSolution& sol);
Vec2 grad_log_field_aux(Vec2 p, const Quadrilateral& q, const ProfileSolution& sol);

// Random quadrilateral of the requested type; rejection sampling inside a
// window known to contain the type. Throws NonConvergence if the cap is hit.
Quadrilateral sample_quad(QuadType type, std::mt19937_64& rng);

// Opening angles used by the full lemma sweep.
const std::vector<double>& lemma_beta_grid();

// All lemma checks over lemma_beta_grid() with the default grid sizes.
std::vector<CheckReport> verify_lemmas();

// boundary_flux over quads_per_type random quadrilaterals of each type.
std::vector<CheckReport> verify_flux(std::uint64_t seed, int quads_per_type = 10,
                                     int n_per_segment = 200);

} // namespace hardyq
