#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "hardyq/constant.hpp"
#include "hardyq/errors.hpp"
#include "hardyq/estimator.hpp"
#include "hardyq/geometry.hpp"

using namespace hardyq;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Intersect the interior-angle rays at A and C to get B (rho = |OC|).
std::array<Vec2, 4> raw_from_angles(double beta, double gamma, double zeta,
                                    double rho) {
    Vec2 a{1, 0};
    Vec2 c{rho * std::cos(beta), rho * std::sin(beta)};
    Vec2 d1{std::cos(kPi - gamma), std::sin(kPi - gamma)};
    Vec2 d2{std::cos(beta - kPi + zeta), std::sin(beta - kPi + zeta)};
    double den = cross(d1, d2);
    REQUIRE(std::abs(den) > 1e-12);
    Vec2 rhs = c - a;
    double t = cross(rhs, d2) / den;
    REQUIRE(t > 0);
    Vec2 b = a + d1 * t;
    return {Vec2{0, 0}, a, b, c};
}

std::array<Vec2, 4> unit_square() {
    return {Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}, Vec2{0, 1}};
}

// Thin reflex dart used for the refinement studies: opening 1.9pi, tip
// half-angles 0.03pi, far vertex on the unit circle.
std::array<Vec2, 4> thin_dart() {
    return raw_from_angles(1.9 * kPi, 0.03 * kPi, 0.03 * kPi, 1.0);
}

void check_common_invariants(const EstimateReport& rep, EstimateMethod m) {
    CHECK(rep.method == m);
    CHECK(rep.lambda_min > 0);
    CHECK(rep.residual < 1e-8);
    CHECK(rep.iterations > 0);
    CHECK(!rep.eigenvector.empty());
}

// min/max of the entries after flipping the sign so the largest-magnitude
// entry is positive; a single-signed ground state gives a value >= 0.
double signed_min_over_max(const std::vector<double>& u) {
    REQUIRE(!u.empty());
    double lead = 0;
    for (double v : u)
        if (std::abs(v) > std::abs(lead)) lead = v;
    REQUIRE(lead != 0);
    const double s = lead > 0 ? 1.0 : -1.0;
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    for (double v : u) {
        mn = std::min(mn, s * v);
        mx = std::max(mx, s * v);
    }
    return mn / mx;
}

// The three thin-dart levels are expensive; compute them once and share.
const std::array<EstimateReport, 3>& thin_dart_levels() {
    static const std::array<EstimateReport, 3> reps = [] {
        std::array<Vec2, 4> poly = thin_dart();
        return std::array<EstimateReport, 3>{
            quad_rayleigh_poly(poly, 1.0 / 64),
            quad_rayleigh_poly(poly, 1.0 / 128),
            quad_rayleigh_poly(poly, 1.0 / 256),
        };
    }();
    return reps;
}

} // namespace

TEST_CASE("sector estimate tracks the transcendental constant when it dips") {
    for (double beta : {1.6 * kPi, 1.8 * kPi, 2.0 * kPi}) {
        EstimateReport rep = sector_oracle(beta, 4000);
        check_common_invariants(rep, EstimateMethod::Sector1D);
        CHECK(rep.discretization == 4000);
        double c = solve_c(beta).c;
        CHECK(std::abs(rep.lambda_min - c) <= 2e-3);
    }
}

TEST_CASE("sector estimate respects the quarter plateau at small openings") {
    for (double beta : {1.2 * kPi, 1.4 * kPi, beta_critical()}) {
        EstimateReport rep = sector_oracle(beta, 4000);
        check_common_invariants(rep, EstimateMethod::Sector1D);
        // the infimum is not attained here, so the discrete value sits above
        // the plateau and approaches it slowly; bound it from both sides
        CHECK(rep.lambda_min >= 0.25 - 5e-3);
        CHECK(rep.lambda_min < 0.40);
    }
}

TEST_CASE("sector refinement converges monotonically from above") {
    const double beta = 1.8 * kPi;
    const double c = solve_c(beta).c;
    double prev = std::numeric_limits<double>::infinity();
    for (int n : {500, 1000, 2000, 4000, 8000}) {
        EstimateReport rep = sector_oracle(beta, n);
        check_common_invariants(rep, EstimateMethod::Sector1D);
        CHECK(rep.lambda_min > c);
        CHECK(rep.lambda_min < prev);
        prev = rep.lambda_min;
    }
    CHECK(prev - c < 1e-4);
}

TEST_CASE("sector ground state is single-signed") {
    EstimateReport rep = sector_oracle(1.8 * kPi, 2000);
    CHECK(rep.eigenvector.size() == 2000);
    CHECK(signed_min_over_max(rep.eigenvector) >= 0);
}

TEST_CASE("sector oracle rejects out-of-contract requests") {
    CHECK_THROWS_AS(sector_oracle(kPi, 1000), DomainError);
    CHECK_THROWS_AS(sector_oracle(0.9 * kPi, 1000), DomainError);
    CHECK_THROWS_AS(sector_oracle(2 * kPi + 1e-4, 1000), DomainError);
    CHECK_THROWS_AS(sector_oracle(1.8 * kPi, 99), DomainError);
    CHECK_NOTHROW(sector_oracle(1.8 * kPi, 100));
}

TEST_CASE("unit square estimate clears the convex floor") {
    Quadrilateral q = normalize(unit_square());
    EstimateReport rep = quad_rayleigh(q, 1.0 / 128);
    check_common_invariants(rep, EstimateMethod::Quad2D);
    CHECK(rep.discretization == 1.0 / 128);
    CHECK(rep.lambda_min >= 0.25 - 0.02);
}

TEST_CASE("quad estimate wrapper and polygon entry point agree") {
    Quadrilateral q = normalize(unit_square());
    EstimateReport a = quad_rayleigh(q, 1.0 / 32);
    EstimateReport b = quad_rayleigh_poly(q.vertices(), 1.0 / 32);
    CHECK(a.lambda_min == b.lambda_min);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("quad estimate rejects coarse meshes and bad steps") {
    Quadrilateral q = normalize(unit_square());
    CHECK_THROWS_AS(quad_rayleigh(q, 0.05), MeshTooCoarse);
    CHECK_THROWS_AS(quad_rayleigh(q, 0.0), DomainError);
    CHECK_THROWS_AS(quad_rayleigh(q, -0.01), DomainError);
}

TEST_CASE("planar ground states stay single-signed") {
    EstimateReport sq = quad_rayleigh(normalize(unit_square()), 1.0 / 64);
    CHECK(signed_min_over_max(sq.eigenvector) >= 0);

    // wide reflex dart: opening 1.2pi, tip half-angles 0.3pi
    std::array<Vec2, 4> fat = raw_from_angles(1.2 * kPi, 0.3 * kPi,
                                              0.3 * kPi, 1.0);
    EstimateReport dt = quad_rayleigh_poly(fat, 1.0 / 64);
    check_common_invariants(dt, EstimateMethod::Quad2D);
    CHECK(signed_min_over_max(dt.eigenvector) >= 0);
}

TEST_CASE("rigid scaling with a matched step leaves the estimate unchanged") {
    std::array<Vec2, 4> poly = thin_dart();
    std::array<Vec2, 4> twice = poly;
    for (Vec2& p : twice) p = p * 2.0;
    EstimateReport a = quad_rayleigh_poly(poly, 1.0 / 64);
    EstimateReport b = quad_rayleigh_poly(twice, 2.0 / 64);
    CHECK(std::abs(a.lambda_min - b.lambda_min) <= 1e-10);
}

TEST_CASE("thin dart estimates descend toward the sector constant") {
    const auto& reps = thin_dart_levels();
    const double c = solve_c(1.9 * kPi).c;
    double prev = std::numeric_limits<double>::infinity();
    for (const EstimateReport& rep : reps) {
        check_common_invariants(rep, EstimateMethod::Quad2D);
        CHECK(rep.lambda_min > c);
        CHECK(rep.lambda_min < prev);
        prev = rep.lambda_min;
    }
}

TEST_CASE("thin dart refinement differences contract by a 1.5 factor") {
    // Required behavior: halving the step should shrink successive
    // differences by at least 1.5x. The plain five-point stair
    // approximation of the slit tip does not achieve this on the thin
    // dart; the assertion states the target so the gap stays visible
    // instead of being relaxed away.
    const auto& reps = thin_dart_levels();
    const double d1 = reps[0].lambda_min - reps[1].lambda_min;
    const double d2 = reps[1].lambda_min - reps[2].lambda_min;
    CHECK(d2 > 0);
    CHECK(d1 >= 1.5 * d2);
}
