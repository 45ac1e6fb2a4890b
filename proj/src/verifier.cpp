#include "hardyq/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

#include "hardyq/errors.hpp"

namespace hardyq {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

Vec2 rot90ccw(Vec2 v) { return {-v.y, v.x}; }

double polar_angle(Vec2 p) {
    double th = std::atan2(p.y, p.x);
    if (th < 0) th += 2 * kPi;
    return th;
}

// inclusive endpoints; n >= 2 unless lo == hi
double lin(double lo, double hi, int i, int n) {
    if (n <= 1) return lo;
    return lo + (hi - lo) * (static_cast<double>(i) / (n - 1));
}

// midpoint rule on (lo, hi): never touches the endpoints
double mid(double lo, double hi, int i, int n) {
    return lo + (hi - lo) * ((i + 0.5) / n);
}

std::string beta_tag(double beta) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "beta=%.6gpi", beta / kPi);
    return buf;
}

void require_n(int n, const char* who) {
    if (n < 2) throw DomainError(std::string(who) + ": need at least 2 grid points");
}

void finish(CheckReport& rep) { rep.passed = rep.min_margin >= -rep.tol; }

struct MinTracker {
    double value = std::numeric_limits<double>::infinity();
    std::vector<double> at;

    void offer(double v, std::initializer_list<double> point) {
        if (v < value) {
            value = v;
            at.assign(point);
        }
    }
};

// interior unit normal of the directed edge a -> b (counterclockwise polygon)
Vec2 interior_normal(Vec2 a, Vec2 b) { return normalized(rot90ccw(b - a)); }

bool is_b_family(QuadType t) {
    return t == QuadType::B1 || t == QuadType::B2 || t == QuadType::B3;
}

struct AngleWindow {
    double beta_lo, beta_hi; // in units of pi
    double gamma_lo, gamma_hi;
    double zeta_lo, zeta_hi;
    double rho_lo, rho_hi;
};

AngleWindow window_for(QuadType type) {
    switch (type) {
    case QuadType::A1: return {1.30, 1.95, 0.03, 0.45, 0.03, 0.45, 0.5, 2.0};
    case QuadType::A2: return {1.05, 1.40, 0.30, 0.49, 0.03, 0.30, 1.2, 3.5};
    case QuadType::B1: return {1.02, 1.18, 0.505, 0.56, 0.12, 0.30, 2.0, 6.0};
    case QuadType::B2: return {1.02, 1.45, 0.51, 0.80, 0.03, 0.35, 0.3, 5.0};
    case QuadType::B3: return {1.02, 1.15, 0.505, 0.56, 0.20, 0.40, 2.5, 7.0};
    default: throw DomainError("sample_quad: no sampler for the convex class");
    }
}

// O = (0,0), A = (1,0), C = rho (cos beta, sin beta); B is the intersection
// of the interior-angle rays at A and C. Throws DegenerateInput if the rays
// miss (the caller rejects and redraws).
std::array<Vec2, 4> raw_from_angles(double beta, double gamma, double zeta, double rho) {
    Vec2 a{1, 0};
    Vec2 c{rho * std::cos(beta), rho * std::sin(beta)};
    Vec2 d1{std::cos(kPi - gamma), std::sin(kPi - gamma)};
    Vec2 d2{std::cos(beta - kPi + zeta), std::sin(beta - kPi + zeta)};
    double den = cross(d1, d2);
    if (std::abs(den) < 1e-12) throw DegenerateInput("parallel angle rays");
    Vec2 rhs = c - a;
    double t = cross(rhs, d2) / den;
    double s = cross(rhs, d1) / den;
    if (t <= 1e-9 || s <= 1e-9) throw DegenerateInput("angle rays do not meet");
    Vec2 b = a + d1 * t;
    return {Vec2{0, 0}, a, b, c};
}

} // namespace

CheckReport check_lemma4(double beta, int n) {
    require_n(n, "check_lemma4");
    ProfileSolution sol = build_profile(beta);
    CheckReport rep;
    rep.name = "lemma4 " + beta_tag(beta);
    rep.grid = {static_cast<std::size_t>(n)};
    rep.tol = 1e-12;

    MinTracker mt;
    double prev_theta = (kPi / 2) * (1.0 / n);
    double prev_g = g_aux(prev_theta, sol);
    for (int i = 1; i < n; ++i) {
        double theta = (kPi / 2) * (static_cast<double>(i + 1) / n);
        double g = g_aux(theta, sol);
        mt.offer(prev_g - g, {prev_theta});
        prev_theta = theta;
        prev_g = g;
    }
    rep.min_margin = mt.value;
    rep.worst_point = mt.at;
    finish(rep);
    return rep;
}

CheckReport check_lemma5(double beta, int n) {
    require_n(n, "check_lemma5");
    ProfileSolution sol = build_profile(beta);
    CheckReport rep;
    rep.name = "lemma5 " + beta_tag(beta);
    rep.grid = {static_cast<std::size_t>(n)};
    rep.tol = 1e-10;

    const double f_half = f_log_deriv(kPi / 2, sol);
    MinTracker mt;
    for (int j = 0; j < n; ++j) {
        double gamma = lin(kPi / 2, kPi, j, n);
        double sg = std::sin(gamma);
        double theta1 = std::atan2(1.0, sg);
        double lhs = (2 + std::cos(gamma)) / (1 + sg * sg) * f_log_deriv(theta1, sol);
        mt.offer(lhs - f_half, {gamma});
    }
    rep.min_margin = mt.value;
    rep.worst_point = mt.at;
    finish(rep);
    return rep;
}

CheckReport check_lemma6(double beta, int m, int n) {
    require_n(m, "check_lemma6");
    require_n(n, "check_lemma6");
    ProfileSolution sol = build_profile(beta);
    CheckReport rep;
    rep.name = "lemma6 " + beta_tag(beta);
    rep.grid = {static_cast<std::size_t>(m), static_cast<std::size_t>(n)};
    rep.tol = 1e-10;

    MinTracker mt;
    for (int j = 0; j < m; ++j) {
        double gamma = lin(kPi / 2, kPi, j, m);
        for (int i = 0; i < n; ++i) {
            double theta = lin(kPi / 2, 1.5 * kPi - gamma, i, n);
            double cs = std::cos(theta + gamma);
            double sn = std::sin(theta + gamma);
            double theta1 = std::atan2(1.0, -cs);
            double lhs = f_log_deriv(theta1, sol);
            double rhs = f_log_deriv(theta, sol) * (1 + cs * cs) / (2 + sn);
            mt.offer(lhs - rhs, {gamma, theta});
        }
    }
    rep.min_margin = mt.value;
    rep.worst_point = mt.at;
    finish(rep);
    return rep;
}

CheckReport check_lemma7(double beta, int m, int n) {
    require_n(m, "check_lemma7");
    require_n(n, "check_lemma7");
    ProfileSolution sol = build_profile(beta);
    const double alpha = sol.params.alpha;
    CheckReport rep;
    rep.name = "lemma7 " + beta_tag(beta);
    rep.grid = {3, static_cast<std::size_t>(m), static_cast<std::size_t>(n)};
    rep.tol = 1e-10;

    MinTracker mt;
    // (i): corner-weight bound near the origin edge
    for (int j = 0; j < m; ++j) {
        double omega = lin(0, kPi / 4, j, m);
        double co = std::cos(omega);
        for (int i = 0; i < n; ++i) {
            double theta = (kPi / 2) * (static_cast<double>(i + 1) / n);
            double v = g_aux(theta, sol) * std::cos(theta + omega) + alpha * co;
            mt.offer(v, {1, omega, theta});
        }
    }
    // (ii) and (iii): mid-range bounds with the cosine profile
    for (int sub = 2; sub <= 3; ++sub) {
        double olo = (sub == 2) ? 1.5 * kPi - beta : 0.0;
        double ohi = 2 * kPi - beta;
        for (int j = 0; j < m; ++j) {
            double omega = lin(olo, ohi, j, m);
            for (int i = 0; i < n; ++i) {
                double theta = lin(kPi / 2, beta - kPi / 2, i, n);
                double f = f_log_deriv(theta, sol);
                double cs = std::cos(theta + omega);
                double sn = std::sin(theta + omega);
                double v = (sub == 2) ? f * cs + alpha * (1 + sn)
                                      : -f * cs + alpha * (1 - sn);
                mt.offer(v, {static_cast<double>(sub), omega, theta});
            }
        }
    }
    rep.min_margin = mt.value;
    rep.worst_point = mt.at;
    finish(rep);
    return rep;
}

double flux_integrand(const Quadrilateral& q, const GammaCurve& gc,
                      const ProfileSolution& sol, std::size_t segment_index,
                      double theta) {
    if (segment_index >= gc.segments.size())
        throw DomainError("flux_integrand: no such segment");
    const GammaSegment& seg = gc.segments[segment_index];
    if (theta < seg.theta_lo - 1e-12 || theta > seg.theta_hi + 1e-12)
        throw DomainError("flux_integrand: theta outside the segment range");
    const double alpha = sol.params.alpha;
    const double beta = q.beta, gamma = q.gamma, delta = q.delta, zeta = q.zeta;
    const QuadType type = gc.quad_type;
    const bool bfam = is_b_family(type);
    auto f = [&](double t) { return f_log_deriv(t, sol); };
    auto g = [&](double t) { return f_log_deriv(t, sol) * std::sin(t); };

    switch (segment_index) {
    case 0: { // bisector at A
        double base = g(theta) * std::cos(theta + gamma / 2);
        if (!bfam) return base + alpha * std::cos(gamma / 2);
        double th1 = theta1_of_theta(theta, q, aux_frame(q), gc, 0);
        return base + g(th1) * std::cos(th1 - gamma / 2);
    }
    case 1: {
        if (type == QuadType::A2 || type == QuadType::B2) // OA/BC bisector line
            return g(theta) * std::sin(theta + (gamma + delta) / 2) +
                   alpha * std::sin((gamma + delta) / 2);
        if (type == QuadType::A1) // parabola against AB, power field beyond
            return f(theta) * std::cos(theta + gamma) +
                   alpha * (1 + std::sin(theta + gamma));
        // B1/B3: parabola against AB, profile field in the auxiliary frame
        double th1 = theta1_of_theta(theta, q, aux_frame(q), gc, 1);
        return f(theta) * std::cos(theta + gamma) -
               f(th1) * std::sin(th1) * (std::sin(th1 - theta - gamma) - std::cos(th1));
    }
    case 2: {
        if (type == QuadType::B3) { // OC/AB bisector line
            double th1 = theta1_of_theta(theta, q, aux_frame(q), gc, 2);
            return g(theta) * std::sin((beta - gamma) / 2 - theta) +
                   g(th1) * std::sin((beta + gamma) / 2 - th1);
        }
        // parabola against BC
        return -f(theta) * std::cos(theta + gamma + delta) +
               alpha * (1 - std::sin(theta + gamma + delta));
    }
    case 3: { // bisector at C: the mirror of the bisector at A
        double thm = beta - theta;
        return f(thm) * std::sin(thm) * std::cos(thm + zeta / 2) +
               alpha * std::cos(zeta / 2);
    }
    default:
        throw DomainError("flux_integrand: no such segment");
    }
}

double splitter_integrand(const Quadrilateral& q, const GammaCurve& gc,
                          const ProfileSolution& sol, double t) {
    if (!is_b_family(gc.quad_type))
        throw DomainError("splitter_integrand: splitter flux arises only for "
                          "obtuse-at-A quadrilaterals");
    if (t <= 0 || t >= 1)
        throw DomainError("splitter_integrand: parameter must be inside (0,1)");
    Vec2 s = gc.gamma_star[0], b = gc.gamma_star[1];
    Vec2 p = s + (b - s) * t;

    Vec2 n_bc = interior_normal(q.B, q.C);
    double d = dot(n_bc, p - q.B);

    AuxFrame frame = aux_frame(q);
    double th1 = aux_theta1(p, frame);
    double r1 = norm(p - frame.origin);

    Vec2 nu = rot90ccw(normalized(b - s));
    if (dot(nu, n_bc) > 0) nu = nu * -1.0; // orient toward edge BC

    double term1 = f_log_deriv(th1, sol) * (d / r1) * std::cos(th1 + q.delta / 2);
    double term2 = -0.5 * dot(n_bc, nu);
    return term1 + term2;
}

CheckReport boundary_flux(const Quadrilateral& q, int n_per_segment) {
    require_n(n_per_segment, "boundary_flux");
    GammaCurve gc = build_gamma(q);
    ProfileSolution sol = build_profile(q.beta);

    CheckReport rep;
    rep.name = "flux " + to_string(gc.quad_type);
    rep.tol = 1e-8;
    const bool bfam = is_b_family(gc.quad_type);
    rep.grid = {gc.segments.size() + (bfam ? 1 : 0),
                static_cast<std::size_t>(n_per_segment)};

    MinTracker mt;
    for (std::size_t s = 0; s < gc.segments.size(); ++s) {
        const GammaSegment& seg = gc.segments[s];
        for (int i = 0; i < n_per_segment; ++i) {
            double theta = mid(seg.theta_lo, seg.theta_hi, i, n_per_segment);
            mt.offer(flux_integrand(q, gc, sol, s, theta),
                     {static_cast<double>(s), theta});
        }
    }
    if (bfam) {
        for (int i = 0; i < n_per_segment; ++i) {
            double t = mid(0, 1, i, n_per_segment);
            mt.offer(splitter_integrand(q, gc, sol, t), {4.0, t});
        }
    }
    rep.min_margin = mt.value;
    rep.worst_point = mt.at;
    finish(rep);
    return rep;
}

double log_field_minus(Vec2 p, const ProfileSolution& sol) {
    double r = norm(p);
    if (r <= 0) throw DomainError("log_field_minus: p at the origin");
    double theta = polar_angle(p);
    return std::log(psi(theta, sol));
}

Vec2 grad_log_field_minus(Vec2 p, const ProfileSolution& sol) {
    double r = norm(p);
    if (r <= 0) throw DomainError("grad_log_field_minus: p at the origin");
    double theta = polar_angle(p);
    double f = f_log_deriv(theta, sol);
    return Vec2{-std::sin(theta), std::cos(theta)} * (f / r);
}

namespace {
std::pair<Vec2, double> edge_line(const Quadrilateral& q, NearPlus which) {
    Vec2 n = (which == NearPlus::EdgeAB) ? interior_normal(q.A, q.B)
                                         : interior_normal(q.B, q.C);
    Vec2 base = (which == NearPlus::EdgeAB) ? q.A : q.B;
    return {n, dot(n, base)};
}
} // namespace

double log_field_edge(Vec2 p, const Quadrilateral& q, NearPlus which, double expo) {
    auto [n, c] = edge_line(q, which);
    double d = dot(n, p) - c;
    if (d <= 0) throw DomainError("log_field_edge: p not on the interior side");
    return expo * std::log(d);
}

Vec2 grad_log_field_edge(Vec2 p, const Quadrilateral& q, NearPlus which, double expo) {
    auto [n, c] = edge_line(q, which);
    double d = dot(n, p) - c;
    if (d <= 0) throw DomainError("grad_log_field_edge: p not on the interior side");
    return n * (expo / d);
}

double log_field_aux(Vec2 p, const Quadrilateral& q, const ProfileSolution& sol) {
    AuxFrame frame = aux_frame(q);
    double th1 = aux_theta1(p, frame);
    return std::log(psi(th1, sol));
}

Vec2 grad_log_field_aux(Vec2 p, const Quadrilateral& q, const ProfileSolution& sol) {
    AuxFrame frame = aux_frame(q);
    double th1 = aux_theta1(p, frame);
    double r1 = norm(p - frame.origin);
    if (r1 <= 0) throw DomainError("grad_log_field_aux: p at the frame origin");
    double f = f_log_deriv(th1, sol);
    Vec2 in_frame = Vec2{-std::sin(th1), std::cos(th1)} * (f / r1);
    double cr = std::cos(frame.rotation), sr = std::sin(frame.rotation);
    return {cr * in_frame.x - sr * in_frame.y, sr * in_frame.x + cr * in_frame.y};
}

Quadrilateral sample_quad(QuadType type, std::mt19937_64& rng) {
    AngleWindow w = window_for(type);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto draw = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
    for (int attempt = 0; attempt < 20000; ++attempt) {
        double beta = kPi * draw(w.beta_lo, w.beta_hi);
        double gamma = kPi * draw(w.gamma_lo, w.gamma_hi);
        double zeta = kPi * draw(w.zeta_lo, w.zeta_hi);
        double rho = draw(w.rho_lo, w.rho_hi);
        if (gamma + zeta >= 2 * kPi - beta - 0.01) continue;
        try {
            Quadrilateral q = normalize(raw_from_angles(beta, gamma, zeta, rho));
            if (q.convex) continue;
            if (build_gamma(q).quad_type == type) return q;
        } catch (const DegenerateInput&) {
        } catch (const ClassificationAmbiguous&) {
        }
    }
    throw NonConvergence("sample_quad: rejection sampling exhausted its attempt cap");
}

const std::vector<double>& lemma_beta_grid() {
    static const std::vector<double> grid = {
        kPi + 0.02,   1.2 * kPi, 1.4 * kPi, beta_critical(),
        1.6 * kPi,    1.8 * kPi, 2 * kPi};
    return grid;
}

std::vector<CheckReport> verify_lemmas() {
    std::vector<CheckReport> reports;
    for (double beta : lemma_beta_grid()) {
        reports.push_back(check_lemma4(beta, 10000));
        reports.push_back(check_lemma5(beta, 1000));
        reports.push_back(check_lemma6(beta, 50, 200));
        reports.push_back(check_lemma7(beta, 20, 200));
    }
    return reports;
}

std::vector<CheckReport> verify_flux(std::uint64_t seed, int quads_per_type,
                                     int n_per_segment) {
    std::mt19937_64 rng(seed);
    std::vector<CheckReport> reports;
    for (QuadType type : {QuadType::A1, QuadType::A2, QuadType::B1, QuadType::B2,
                          QuadType::B3}) {
        for (int k = 0; k < quads_per_type; ++k) {
            Quadrilateral q = sample_quad(type, rng);
            CheckReport rep = boundary_flux(q, n_per_segment);
            rep.name += " #" + std::to_string(k);
            rep.seed = seed;
            reports.push_back(std::move(rep));
        }
    }
    return reports;
}

} // namespace hardyq
