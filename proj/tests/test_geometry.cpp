#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "doctest.h"
#include "hardyq/errors.hpp"
#include "hardyq/geometry.hpp"

using namespace hardyq;

namespace {

constexpr double kPi = std::numbers::pi;

Vec2 dir(double a) { return {std::cos(a), std::sin(a)}; }

// Quadrilateral from angle data: A = (1,0), C = rhoC e(i beta), B the
// intersection of the interior-side rays leaving A and C.
std::array<Vec2, 4> raw_from_angles(double beta, double gamma, double zeta,
                                    double rhoC) {
    const Vec2 A{1, 0}, C = dir(beta) * rhoC;
    const Vec2 d0 = dir(kPi - gamma), d1 = dir(beta - kPi + zeta);
    const double det = cross(d0, d1 * -1.0);
    const Vec2 rhs = C - A;
    const double t0 = (rhs.x * (-d1.y) - rhs.y * (-d1.x)) / det;
    return {Vec2{0, 0}, A, A + d0 * t0, C};
}

Quadrilateral quad_from_angles(double beta, double gamma, double zeta, double rhoC) {
    return normalize(raw_from_angles(beta, gamma, zeta, rhoC));
}

double dgap(Vec2 p, const Quadrilateral& q) {
    return distance_minus(p, q) - distance_plus(p, q);
}

// Sample a quadrilateral of the requested type by rejection inside a window
// known to contain it. Deterministic in the generator state.
Quadrilateral sample_type(QuadType want, std::mt19937_64& rng) {
    struct Win {
        double b0, b1, g0, g1, z0, z1, r0, r1;
    };
    Win w;
    switch (want) {
    case QuadType::A1: w = {1.30, 1.95, 0.03, 0.45, 0.03, 0.45, 0.5, 2.0}; break;
    case QuadType::A2: w = {1.05, 1.40, 0.30, 0.49, 0.03, 0.30, 1.2, 3.5}; break;
    case QuadType::B1: w = {1.02, 1.18, 0.505, 0.56, 0.12, 0.30, 2.0, 6.0}; break;
    case QuadType::B2: w = {1.02, 1.45, 0.51, 0.80, 0.03, 0.35, 0.3, 5.0}; break;
    default:           w = {1.02, 1.15, 0.505, 0.56, 0.20, 0.40, 2.5, 7.0}; break;
    }
    std::uniform_real_distribution<double> U(0, 1);
    for (int attempt = 0; attempt < 20000; ++attempt) {
        const double beta = (w.b0 + (w.b1 - w.b0) * U(rng)) * kPi;
        const double gamma = (w.g0 + (w.g1 - w.g0) * U(rng)) * kPi;
        const double zeta = (w.z0 + (w.z1 - w.z0) * U(rng)) * kPi;
        const double rhoC = w.r0 + (w.r1 - w.r0) * U(rng);
        if (2 * kPi - beta - gamma - zeta < 0.02)
            continue;
        try {
            Quadrilateral q = quad_from_angles(beta, gamma, zeta, rhoC);
            if (build_gamma(q).quad_type == want)
                return q;
        } catch (const std::exception&) {
        }
    }
    FAIL("sample_type: no quadrilateral of type ", to_string(want), " found");
    return {};
}

} // namespace

TEST_CASE("geometry: vector helpers") {
    CHECK(dot(Vec2{1, 2}, Vec2{3, 4}) == doctest::Approx(11.0));
    CHECK(cross(Vec2{1, 0}, Vec2{0, 1}) == doctest::Approx(1.0));
    CHECK(norm(Vec2{3, 4}) == doctest::Approx(5.0));
    const Vec2 n = normalized(Vec2{3, 4});
    CHECK(norm(n) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("geometry: unit square normalizes to the convex tag") {
    const Quadrilateral q =
        normalize({Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}, Vec2{0, 1}});
    CHECK(q.convex);
    CHECK(q.beta == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(q.gamma == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(q.delta == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK(q.zeta == doctest::Approx(kPi / 2).epsilon(1e-12));
    CHECK_THROWS_AS((void)build_gamma(q), DomainError);
}

TEST_CASE("geometry: reference dart lands on the stated reflex angle") {
    // beta = 1.75 pi dart; the raw list starts at B to exercise relabeling
    const auto raw = raw_from_angles(1.75 * kPi, 0.10 * kPi, 0.10 * kPi, 1.0);
    const std::array<Vec2, 4> scrambled{raw[2], raw[3], raw[0], raw[1]};
    const Quadrilateral q = normalize(scrambled);
    CHECK(!q.convex);
    CHECK(norm(q.O) == 0.0);
    CHECK(norm(q.A - Vec2{1, 0}) < 1e-14);
    CHECK(q.beta == doctest::Approx(1.75 * kPi).epsilon(1e-12));
    CHECK(q.beta + q.gamma + q.delta + q.zeta ==
          doctest::Approx(2 * kPi).epsilon(1e-12));

    // interior wedge near O spans polar angles (0, beta)
    for (int i = 0; i < 64; ++i) {
        const double th = 0.02 + (2 * kPi - 0.04) * i / 63.0;
        const bool in = point_inside(dir(th) * 0.05, q);
        INFO("theta = ", th);
        CHECK(in == (th < q.beta - 0.01));
    }
}

TEST_CASE("geometry: far vertex on the ray of C collapses the boundary") {
    // B at polar angle 1.75 pi together with C on the same ray makes B, C, O
    // collinear, which is not a quadrilateral
    const std::array<Vec2, 4> raw{Vec2{0, 0}, Vec2{1, 0}, Vec2{1.5, -1.5},
                                  dir(1.75 * kPi) * 0.8};
    CHECK_THROWS_AS((void)normalize(raw), DegenerateInput);
}

TEST_CASE("geometry: degenerate inputs are rejected") {
    CHECK_THROWS_AS((void)normalize({Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 0}, Vec2{0, 1}}),
                    DegenerateInput); // repeated vertex
    CHECK_THROWS_AS((void)normalize({Vec2{0, 0}, Vec2{1, 1}, Vec2{1, 0}, Vec2{0, 1}}),
                    DegenerateInput); // bowtie
    CHECK_THROWS_AS((void)normalize({Vec2{0, 0}, Vec2{1, 0}, Vec2{2, 0}, Vec2{1, 1}}),
                    DegenerateInput); // collinear consecutive triple
    CHECK_THROWS_AS((void)normalize({Vec2{0, 0}, Vec2{1, 0}, Vec2{2, 0}, Vec2{3, 0}}),
                    DegenerateInput); // zero area
}

TEST_CASE("geometry: similarity invariance of the normalized pose") {
    std::mt19937_64 rng(405060708ULL);
    std::uniform_real_distribution<double> U(0, 1);
    const auto raw = raw_from_angles(1.6 * kPi, 0.22 * kPi, 0.13 * kPi, 1.4);
    const Quadrilateral base = normalize(raw);
    const QuadType base_type = build_gamma(base).quad_type;

    for (int trial = 0; trial < 20; ++trial) {
        const double ang = 2 * kPi * U(rng), sc = 0.1 + 5.0 * U(rng);
        const Vec2 off{10 * U(rng) - 5, 10 * U(rng) - 5};
        std::array<Vec2, 4> moved;
        for (int i = 0; i < 4; ++i) {
            const Vec2 p = raw[i];
            moved[i] = Vec2{std::cos(ang) * p.x - std::sin(ang) * p.y,
                            std::sin(ang) * p.x + std::cos(ang) * p.y} *
                           sc +
                       off;
        }
        if (trial % 2)
            std::reverse(moved.begin(), moved.end()); // orientation freedom
        const Quadrilateral q = normalize(moved);
        INFO("trial ", trial);
        CHECK(norm(q.B - base.B) < 1e-12 * (1 + norm(base.B)));
        CHECK(norm(q.C - base.C) < 1e-12);
        CHECK(std::abs(q.beta - base.beta) < 1e-12);
        CHECK(std::abs(q.gamma - base.gamma) < 1e-12);
        CHECK(std::abs(q.delta - base.delta) < 1e-12);
        CHECK(std::abs(q.zeta - base.zeta) < 1e-12);
        CHECK(q.mirrored == base.mirrored);
        CHECK(build_gamma(q).quad_type == base_type);
    }
}

TEST_CASE("geometry: mirroring brings the conventions into force") {
    // obtuse angle at the C-side neighbor must be moved to A
    const Quadrilateral qb = quad_from_angles(1.2 * kPi, 0.1 * kPi, 0.55 * kPi, 1.0);
    CHECK(qb.mirrored);
    CHECK(qb.gamma == doctest::Approx(0.55 * kPi).epsilon(1e-12));
    CHECK(qb.zeta == doctest::Approx(0.1 * kPi).epsilon(1e-12));
    CHECK(qb.beta == doctest::Approx(1.2 * kPi).epsilon(1e-12));

    // acute-neighbor quadrilateral whose bisector apex starts in the upper
    // half flips so that theta0 <= beta/2
    const Quadrilateral qa = quad_from_angles(1.75 * kPi, 0.07 * kPi, 0.10 * kPi, 1.0);
    CHECK(qa.mirrored);
    const GammaCurve gc = build_gamma(qa);
    CHECK(gc.theta0 <= qa.beta / 2 + 1e-12);

    const Quadrilateral qn = quad_from_angles(1.75 * kPi, 0.10 * kPi, 0.07 * kPi, 1.0);
    CHECK(!qn.mirrored);
}

TEST_CASE("geometry: distance fields") {
    const Quadrilateral q = quad_from_angles(1.4 * kPi, 0.25 * kPi, 0.2 * kPi, 1.0);

    // point hovering over the first side
    const Vec2 p{0.5, 1e-3};
    CHECK(distance_minus(p, q) == doctest::Approx(1e-3).epsilon(1e-12));
    CHECK(distance_to_boundary(p, q) == doctest::Approx(1e-3).epsilon(1e-12));

    // near the far vertex: brute-force minimum over dense edge samples
    const Vec2 pb = q.B + normalized((q.A + q.C) * 0.5 - q.B) * 0.07;
    REQUIRE(point_inside(pb, q));
    double brute = 1e300;
    for (int i = 0; i <= 20000; ++i) {
        const double t = i / 20000.0;
        brute = std::min(brute, norm(pb - (q.A + (q.B - q.A) * t)));
        brute = std::min(brute, norm(pb - (q.B + (q.C - q.B) * t)));
    }
    CHECK(std::abs(distance_plus(pb, q) - brute) < 1e-6);
}

namespace {

struct TypedQuad {
    const char* label;
    double beta, gamma, zeta, rhoC;
    QuadType type;
};

const std::vector<TypedQuad>& typed_quads() {
    static const std::vector<TypedQuad> table{
        {"A1 deep dart", 1.75, 0.10, 0.07, 1.0, QuadType::A1},
        {"A1 mid dart", 1.40, 0.25, 0.20, 1.0, QuadType::A1},
        {"A2 shallow", 1.20, 0.45, 0.15, 2.0, QuadType::A2},
        {"B1 wide", 1.10, 0.52, 0.20, 4.0, QuadType::B1},
        {"B2 steep", 1.15, 0.60, 0.10, 2.5, QuadType::B2},
        {"B3 far apex", 1.10, 0.52, 0.25, 4.0, QuadType::B3},
    };
    return table;
}

void check_kind_pattern(const GammaCurve& gc) {
    REQUIRE(gc.segments.size() == 4);
    const auto k = [&](int i) { return gc.segments[i].kind; };
    switch (gc.quad_type) {
    case QuadType::A1:
    case QuadType::B1:
        CHECK(k(0) == SegmentKind::Line);
        CHECK(k(1) == SegmentKind::Parabola);
        CHECK(k(2) == SegmentKind::Parabola);
        CHECK(k(3) == SegmentKind::Line);
        break;
    case QuadType::A2:
    case QuadType::B2:
        CHECK(k(0) == SegmentKind::Line);
        CHECK(k(1) == SegmentKind::Line);
        CHECK(k(2) == SegmentKind::Parabola);
        CHECK(k(3) == SegmentKind::Line);
        break;
    default:
        CHECK(k(0) == SegmentKind::Line);
        CHECK(k(1) == SegmentKind::Parabola);
        CHECK(k(2) == SegmentKind::Line);
        CHECK(k(3) == SegmentKind::Line);
        break;
    }
}

} // namespace

TEST_CASE("geometry: per-type construction and curve correctness") {
    for (const TypedQuad& t : typed_quads()) {
        INFO(t.label);
        const Quadrilateral q =
            quad_from_angles(t.beta * kPi, t.gamma * kPi, t.zeta * kPi, t.rhoC);
        const GammaCurve gc = build_gamma(q);
        CHECK(gc.quad_type == t.type);
        check_kind_pattern(gc);

        CHECK(gc.segments.front().theta_lo == 0.0);
        CHECK(gc.segments.back().theta_hi == doctest::Approx(q.beta).epsilon(1e-12));
        for (int i = 0; i + 1 < 4; ++i) {
            CHECK(gc.segments[i].theta_hi ==
                  doctest::Approx(gc.segments[i + 1].theta_lo).epsilon(1e-12));
            const double th = gc.segments[i].theta_hi;
            if (th <= 0 || th >= q.beta)
                continue;
            const Vec2 a = gamma_point(gc.segments[i], th);
            const Vec2 b = gamma_point(gc.segments[i + 1], th);
            CHECK(norm(a - b) < 1e-9); // junctions shared between pieces
        }

        // equal distances along the whole curve, 500 samples
        for (const GammaSegment& s : gc.segments) {
            if (s.theta_hi - s.theta_lo < 1e-12)
                continue;
            for (int i = 0; i < 125; ++i) {
                const double th =
                    s.theta_lo + (s.theta_hi - s.theta_lo) * (i + 0.5) / 125.0;
                const Vec2 p = gamma_point(s, th);
                INFO("theta = ", th);
                CHECK(point_inside(p, q));
                CHECK(std::abs(dgap(p, q)) < 1e-9);
            }
        }

        // the splitter runs from the apex to the far vertex
        CHECK(norm(gc.gamma_star[0] - gc.S) == 0.0);
        CHECK(norm(gc.gamma_star[1] - q.B) == 0.0);
        CHECK(std::abs(dgap(gc.S, q)) < 1e-9);
        CHECK(gc.theta0 == doctest::Approx(std::atan2(gc.S.y, gc.S.x) < 0
                                               ? std::atan2(gc.S.y, gc.S.x) + 2 * kPi
                                               : std::atan2(gc.S.y, gc.S.x)));
        if (gc.quad_type == QuadType::B3) {
            REQUIRE(gc.theta0_prime.has_value());
            CHECK(*gc.theta0_prime == gc.theta0);
        } else {
            CHECK(!gc.theta0_prime.has_value());
        }
    }
}

TEST_CASE("geometry: level-set oracle agrees with the built curve") {
    // dense sign-change extraction of distance_minus - distance_plus on a
    // 2000^2 grid, compared in both directions of the Hausdorff distance
    for (const char* label : {"A1 deep dart", "B1 wide"}) {
        const TypedQuad* t = nullptr;
        for (const TypedQuad& c : typed_quads())
            if (std::string(c.label) == label)
                t = &c;
        REQUIRE(t != nullptr);
        INFO(label);
        const Quadrilateral q =
            quad_from_angles(t->beta * kPi, t->gamma * kPi, t->zeta * kPi, t->rhoC);
        const GammaCurve gc = build_gamma(q);

        double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
        for (const Vec2& v : q.vertices()) {
            xmin = std::min(xmin, v.x), xmax = std::max(xmax, v.x);
            ymin = std::min(ymin, v.y), ymax = std::max(ymax, v.y);
        }
        const int N = 2000;
        const double hx = (xmax - xmin) / (N - 1), hy = (ymax - ymin) / (N - 1);
        const double step = std::max(hx, hy);

        std::vector<Vec2> level;
        std::vector<double> gap_prev(N);
        std::vector<char> in_prev(N);
        for (int j = 0; j < N; ++j) {
            double gap_here = 0;
            char in_here = 0;
            for (int i = 0; i < N; ++i) {
                const Vec2 p{xmin + i * hx, ymin + j * hy};
                const double g = dgap(p, q);
                const char in = point_inside(p, q) ? 1 : 0;
                if (i > 0 && in && in_here && g * gap_here < 0)
                    level.push_back(Vec2{p.x - hx / 2, p.y});
                if (j > 0 && in && in_prev[i] && g * gap_prev[i] < 0)
                    level.push_back(Vec2{p.x, p.y - hy / 2});
                gap_prev[i] = gap_here = g;
                in_prev[i] = in_here = in;
            }
        }
        REQUIRE(level.size() > 500);

        // dense enough that the polyline spacing stays below one grid step
        // even near C, where the theta parametrization moves fastest
        std::vector<Vec2> curve;
        for (const GammaSegment& s : gc.segments)
            for (int i = 0; i <= 16384; ++i)
                curve.push_back(gamma_point(
                    s, s.theta_lo + (s.theta_hi - s.theta_lo) * i / 16384.0));

        auto min_dist2 = [](Vec2 p, const std::vector<Vec2>& set) {
            double best = 1e300;
            for (const Vec2& c : set) {
                const double dx = p.x - c.x, dy = p.y - c.y;
                best = std::min(best, dx * dx + dy * dy);
            }
            return best;
        };

        double worst_a = 0; // extracted point far from the built curve
        for (const Vec2& p : level)
            worst_a = std::max(worst_a, min_dist2(p, curve));
        CHECK(std::sqrt(worst_a) < 2 * step);

        double worst_b = 0; // built-curve point missing from the extraction
        for (const Vec2& c : curve) {
            if (distance_to_boundary(c, q) < 3 * step)
                continue; // extraction has no inside pairs next to the boundary
            worst_b = std::max(worst_b, min_dist2(c, level));
        }
        CHECK(std::sqrt(worst_b) < 2 * step);
    }
}

TEST_CASE("geometry: classification ties") {
    // within the tie window of the obtuse-angle boundary but not exactly on it
    const Quadrilateral q1 =
        quad_from_angles(1.2 * kPi, 0.5 * kPi + 1e-10, 0.15 * kPi, 2.0);
    CHECK_THROWS_AS((void)build_gamma(q1), ClassificationAmbiguous);

    // exact boundary value folds into the A family
    Quadrilateral q2 = quad_from_angles(1.2 * kPi, 0.5 * kPi - 1e-3, 0.15 * kPi, 2.0);
    q2.gamma = kPi / 2; // exact tie, by convention an A type
    const GammaCurve gc = build_gamma(q2);
    CHECK((gc.quad_type == QuadType::A1 || gc.quad_type == QuadType::A2));
}

TEST_CASE("geometry: parabola normals") {
    // quarter-turn special value: denominator is 4, so the scale is 1/2
    const DirectrixLine dx{std::sin(0.3), std::cos(0.3), 0.7};
    const double th = -kPi / 2 - 0.3;
    const Vec2 nu = parabola_normal(th, dx);
    CHECK(nu.x == doctest::Approx((std::cos(th) - dx.sin_a) / 2).epsilon(1e-14));
    CHECK(nu.y == doctest::Approx((std::sin(th) - dx.cos_a) / 2).epsilon(1e-14));

    std::mt19937_64 rng(111213ULL);
    std::uniform_real_distribution<double> U(0, 1);
    for (int i = 0; i < 50; ++i) {
        const double a = 2 * kPi * U(rng);
        const DirectrixLine d{std::sin(a), std::cos(a), 0.2 + U(rng)};
        const double t = 2 * kPi * U(rng);
        if (2 - 2 * (std::sin(t) * d.cos_a + std::cos(t) * d.sin_a) <= 1e-3)
            continue;
        CHECK(norm(parabola_normal(t, d)) == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)parabola_normal(kPi / 2 - 0.3, dx), DegenerateNormal);

    // on the first parabola of the deep dart the normal matches the closed
    // form in (cos th + sin gamma, sin th + cos gamma)/sqrt(2 + 2 sin(th+gamma))
    const Quadrilateral q = quad_from_angles(1.75 * kPi, 0.10 * kPi, 0.07 * kPi, 1.0);
    const GammaCurve gc = build_gamma(q);
    const GammaSegment& par = gc.segments[1];
    REQUIRE(par.kind == SegmentKind::Parabola);
    for (int i = 1; i < 8; ++i) {
        const double tt = par.theta_lo + (par.theta_hi - par.theta_lo) * i / 8.0;
        const Vec2 v = parabola_normal(tt, par.directrix);
        const double den = std::sqrt(2 + 2 * std::sin(tt + q.gamma));
        CHECK(v.x == doctest::Approx((std::cos(tt) + std::sin(q.gamma)) / den)
                         .epsilon(1e-12));
        CHECK(v.y == doctest::Approx((std::sin(tt) + std::cos(q.gamma)) / den)
                         .epsilon(1e-12));

        // orientation: the gradient of the distance gap points the same way
        const Vec2 p = gamma_point(par, tt);
        const double h = 1e-6;
        const Vec2 grad{(dgap(p + Vec2{h, 0}, q) - dgap(p - Vec2{h, 0}, q)) / (2 * h),
                        (dgap(p + Vec2{0, h}, q) - dgap(p - Vec2{0, h}, q)) / (2 * h)};
        const Vec2 gn = normalized(grad);
        CHECK(norm(gn - v) < 1e-5);
    }
}

TEST_CASE("geometry: auxiliary frame anchor and relations") {
    const Quadrilateral q = quad_from_angles(1.10 * kPi, 0.52 * kPi, 0.20 * kPi, 4.0);
    const GammaCurve gc = build_gamma(q);
    REQUIRE(gc.quad_type == QuadType::B1);
    const AuxFrame fr = aux_frame(q);

    const double g = q.gamma;
    CHECK(fr.origin.x == doctest::Approx(std::sin(g) * std::sin(g)).epsilon(1e-12));
    CHECK(fr.origin.y == doctest::Approx(std::sin(g) * std::cos(g)).epsilon(1e-12));
    CHECK(fr.rotation == doctest::Approx(kPi - g).epsilon(1e-12));

    // anchor point: theta = pi/2 - gamma/2 on the first segment maps to the
    // same angle in the auxiliary frame
    const double tha = kPi / 2 - g / 2;
    REQUIRE(tha > 0);
    REQUIRE(tha < gc.segments[0].theta_hi + 1e-12);
    const Vec2 pa = gamma_point(gc.segments[0], tha);
    CHECK(std::abs(aux_theta1(pa, fr) - tha) < 1e-9);
    CHECK(std::abs(theta1_of_theta(tha, q, fr, gc, 0) - tha) < 1e-9);

    // the parabola relation at theta = pi/2 reduces to cot(theta1) = sin gamma
    const double t1 = theta1_of_theta(kPi / 2, q, fr, gc, 1);
    CHECK(std::cos(t1) / std::sin(t1) == doctest::Approx(std::sin(g)).epsilon(1e-9));

    // closed forms against the coordinate-transform oracle on both pieces
    for (std::size_t si : {std::size_t{0}, std::size_t{1}}) {
        const GammaSegment& s = gc.segments[si];
        for (int i = 1; i < 20; ++i) {
            const double th = s.theta_lo + (s.theta_hi - s.theta_lo) * i / 20.0;
            if (th <= 1e-9)
                continue;
            const double by_formula = theta1_of_theta(th, q, fr, gc, si);
            const double by_coords = aux_theta1(gamma_point(s, th), fr);
            INFO("segment ", si, " theta ", th);
            CHECK(std::abs(by_formula - by_coords) < 1e-9);
        }
    }

    CHECK_THROWS_AS((void)theta1_of_theta(gc.segments[0].theta_hi + 0.2, q, fr, gc, 0),
                    DomainError);
    CHECK_THROWS_AS((void)theta1_of_theta(0.1, q, fr, gc, 3), DomainError);

    // third-piece relation of the pattern ending in two lines
    const Quadrilateral q3 = quad_from_angles(1.10 * kPi, 0.52 * kPi, 0.25 * kPi, 4.0);
    const GammaCurve gc3 = build_gamma(q3);
    REQUIRE(gc3.quad_type == QuadType::B3);
    const AuxFrame fr3 = aux_frame(q3);
    const GammaSegment& s2 = gc3.segments[2];
    for (int i = 1; i < 20; ++i) {
        const double th = s2.theta_lo + (s2.theta_hi - s2.theta_lo) * i / 20.0;
        const double by_formula = theta1_of_theta(th, q3, fr3, gc3, 2);
        const double by_coords = aux_theta1(gamma_point(s2, th), fr3);
        INFO("theta ", th);
        CHECK(std::abs(by_formula - by_coords) < 1e-9);
    }

    // acute angle at A has no auxiliary frame
    const Quadrilateral qa = quad_from_angles(1.75 * kPi, 0.10 * kPi, 0.07 * kPi, 1.0);
    CHECK_THROWS_AS((void)aux_frame(qa), DomainError);
}

TEST_CASE("geometry: auxiliary angle lower bound on random quadrilaterals") {
    std::mt19937_64 rng(987654321ULL);
    int b3_seen = 0;
    for (int k = 0; k < 50; ++k) {
        const QuadType want = k % 3 == 0   ? QuadType::B1
                              : k % 3 == 1 ? QuadType::B2
                                           : QuadType::B3;
        const Quadrilateral q = sample_type(want, rng);
        const GammaCurve gc = build_gamma(q);
        const AuxFrame fr = aux_frame(q);
        CHECK(q.beta + q.gamma + q.delta + q.zeta ==
              doctest::Approx(2 * kPi).epsilon(1e-12));

        const GammaSegment& s0 = gc.segments[0];
        for (int i = 1; i <= 1000; ++i) {
            const double th = s0.theta_lo + (s0.theta_hi - s0.theta_lo) * i / 1000.0;
            const double t1 = theta1_of_theta(th, q, fr, gc, 0);
            INFO("quad ", k, " theta ", th);
            CHECK(t1 >= th + q.gamma - kPi - 1e-9);
        }
        if (gc.quad_type == QuadType::B3) {
            ++b3_seen;
            const GammaSegment& s2 = gc.segments[2];
            for (int i = 0; i <= 1000; ++i) {
                const double th =
                    s2.theta_lo + (s2.theta_hi - s2.theta_lo) * i / 1000.0;
                const double t1 = theta1_of_theta(th, q, fr, gc, 2);
                INFO("quad ", k, " theta ", th);
                CHECK(t1 >= th + q.gamma - kPi - 1e-9);
            }
        }
    }
    CHECK(b3_seen >= 10);
}

TEST_CASE("geometry: svg rendering contains the expected elements") {
    const Quadrilateral q = quad_from_angles(1.75 * kPi, 0.10 * kPi, 0.07 * kPi, 1.0);
    const GammaCurve gc = build_gamma(q);
    const std::string svg = to_svg(q, gc);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("<polygon") != std::string::npos);
    CHECK(svg.find("<polyline") != std::string::npos);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);

    const Quadrilateral qb = quad_from_angles(1.10 * kPi, 0.52 * kPi, 0.20 * kPi, 4.0);
    const std::string svgb = to_svg(qb, build_gamma(qb));
    CHECK(svgb.find("#9467bd") != std::string::npos); // aux frame axes drawn
}
