#pragma once

// Two independent numerical estimates of the constant: the 1D reduction
// (smallest eigenvalue of the weighted second-derivative operator on the
// opening interval) and a 2D finite-difference minimization of the weighted
// Rayleigh quotient over the actual quadrilateral.

#include <array>
#include <string>
#include <vector>

#include "hardyq/geometry.hpp"

namespace hardyq {

enum class EstimateMethod { Sector1D, Quad2D };

std::string to_string(EstimateMethod m);

struct EstimateReport {
    EstimateMethod method = EstimateMethod::Sector1D;
    double discretization = 0; // interior node count n (1D) or mesh step h (2D)
    double lambda_min = 0;
    int iterations = 0; // linear solves performed
    double residual = 0; // ||A psi - lambda W psi|| / ||A psi|| at exit
    std::vector<double> eigenvector; // converged discrete ground state
};

// Smallest eigenvalue of -psi'' = lambda V psi on (0, beta), Dirichlet ends,
// on n interior nodes offset half a step from the endpoints. The corner rows
// are calibrated against the local power solution theta^alpha, and alpha is
// tied to lambda by a damped fixed-point loop. Requires pi < beta <= 2 pi and
// n >= 100; throws NonConvergence if an iteration budget is exhausted.
EstimateReport sector_oracle(double beta, int n);

// Smallest eigenvalue of the 5-point Laplacian against the 1/d^2 weight on
// the grid of step h anchored at the bounding-box corner, restricted to
// nodes of depth > h/2. Requires at least 500 such nodes (MeshTooCoarse).
// Inverse power iteration, conjugate-gradient inner solves.
EstimateReport quad_rayleigh_poly(const std::array<Vec2, 4>& poly, double h);

// Same on a normalized quadrilateral's vertices.
EstimateReport quad_rayleigh(const Quadrilateral& q, double h);

} // namespace hardyq
