#include "hardyq/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "hardyq/errors.hpp"
#include "hardyq/profile.hpp"

namespace hardyq {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double norm2(const std::vector<double>& v) {
    double s = 0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dotv(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// ---------------------------------------------------------------- 1D sector

struct Tridiag {
    std::vector<double> diag, off; // symmetric: off[i] couples i and i+1
};

// Solve (T - shift*0) x = b in place by the Thomas algorithm.
std::vector<double> thomas_solve(const Tridiag& t, std::vector<double> b) {
    const std::size_t n = t.diag.size();
    std::vector<double> c(n - 1);
    double piv = t.diag[0];
    c[0] = t.off[0] / piv;
    b[0] /= piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = t.diag[i] - t.off[i - 1] * c[i - 1];
        if (i < n - 1) c[i] = t.off[i] / piv;
        b[i] = (b[i] - t.off[i - 1] * b[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;) b[i] -= c[i] * b[i + 1];
    return b;
}

void tridiag_mul(const Tridiag& t, const std::vector<double>& x,
                 std::vector<double>& out) {
    const std::size_t n = t.diag.size();
    for (std::size_t i = 0; i < n; ++i) {
        double s = t.diag[i] * x[i];
        if (i > 0) s += t.off[i - 1] * x[i - 1];
        if (i + 1 < n) s += t.off[i] * x[i + 1];
        out[i] = s;
    }
}

// Second-difference matrix with the rows nearest each end recalibrated so the
// local power solution theta^alpha (and its mirror) is differenced exactly.
Tridiag sector_matrix(double beta, int n, double alpha,
                      const std::vector<double>& v) {
    const double h = beta / n;
    const double h2 = h * h;
    Tridiag t;
    t.diag.assign(n, 2.0 / h2);
    t.off.assign(n - 1, -1.0 / h2);

    const int matched = std::min(8, n / 4);
    const double c_loc = alpha * (1 - alpha);
    auto theta = [&](int j) { return (j + 0.5) * h; };
    for (int j = 0; j < matched; ++j) {
        double uj = std::pow(theta(j), alpha);
        double up = std::pow(theta(j + 1), alpha);
        double um = j > 0 ? std::pow(theta(j - 1), alpha) : 0.0;
        t.diag[j] = (h2 * c_loc * v[j] * uj + um + up) / (uj * h2);

        int k = n - 1 - j; // mirrored row at the far end
        double wj = std::pow(beta - theta(k), alpha);
        double wp = std::pow(beta - theta(k - 1), alpha);
        double wm = j > 0 ? std::pow(beta - theta(k + 1), alpha) : 0.0;
        t.diag[k] = (h2 * c_loc * v[k] * wj + wm + wp) / (wj * h2);
    }
    return t;
}

struct EigenResult {
    double lambda = 0;
    double residual = 0;
    int solves = 0;
};

// Smallest eigenpair of T psi = lambda diag(v) psi by inverse power
// iteration; psi is the warm-start on entry and the eigenvector on exit.
EigenResult smallest_pair(const Tridiag& t, const std::vector<double>& v,
                          std::vector<double>& psi, double tol, int max_iter) {
    const std::size_t n = v.size();
    std::vector<double> rhs(n), tpsi(n);
    EigenResult res;
    for (int it = 0; it < max_iter; ++it) {
        for (std::size_t i = 0; i < n; ++i) rhs[i] = v[i] * psi[i];
        psi = thomas_solve(t, rhs);
        ++res.solves;
        double nn = norm2(psi);
        for (double& x : psi) x /= nn;

        tridiag_mul(t, psi, tpsi);
        double num = dotv(psi, tpsi);
        double den = 0;
        for (std::size_t i = 0; i < n; ++i) den += v[i] * psi[i] * psi[i];
        res.lambda = num / den;

        double rn = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double ri = tpsi[i] - res.lambda * v[i] * psi[i];
            rn += ri * ri;
        }
        res.residual = std::sqrt(rn) / norm2(tpsi);
        if (res.residual < tol) return res;
    }
    throw NonConvergence("sector_oracle: inverse power iteration stalled at "
                         "residual " + std::to_string(res.residual));
}

// -------------------------------------------------------------- 2D Rayleigh

double seg_dist(Vec2 p, Vec2 a, Vec2 b) {
    Vec2 ab = b - a;
    double t = dot(p - a, ab) / dot(ab, ab);
    t = std::clamp(t, 0.0, 1.0);
    return norm(p - (a + ab * t));
}

bool poly_inside(Vec2 p, const std::array<Vec2, 4>& poly) {
    bool in = false;
    for (int i = 0; i < 4; ++i) {
        Vec2 a = poly[i], b = poly[(i + 1) % 4];
        if ((a.y > p.y) != (b.y > p.y)) {
            double xc = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if (p.x < xc) in = !in;
        }
    }
    return in;
}

struct Mesh {
    double h = 0;
    int nx = 0, ny = 0;
    std::vector<int> index;  // nx*ny, -1 for non-interior
    std::vector<double> w;   // 1/d^2 per interior node
    std::size_t count = 0;
};

Mesh build_mesh(const std::array<Vec2, 4>& poly, double h) {
    double xmin = poly[0].x, xmax = poly[0].x;
    double ymin = poly[0].y, ymax = poly[0].y;
    for (Vec2 p : poly) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    Mesh m;
    m.h = h;
    m.nx = static_cast<int>(std::floor((xmax - xmin) / h + 1e-12)) + 1;
    m.ny = static_cast<int>(std::floor((ymax - ymin) / h + 1e-12)) + 1;
    m.index.assign(static_cast<std::size_t>(m.nx) * m.ny, -1);
    for (int j = 0; j < m.ny; ++j) {
        for (int i = 0; i < m.nx; ++i) {
            Vec2 p{xmin + i * h, ymin + j * h};
            if (!poly_inside(p, poly)) continue;
            double d = seg_dist(p, poly[0], poly[1]);
            for (int e = 1; e < 4; ++e)
                d = std::min(d, seg_dist(p, poly[e], poly[(e + 1) % 4]));
            if (d <= h / 2) continue;
            m.index[static_cast<std::size_t>(j) * m.nx + i] =
                static_cast<int>(m.count++);
            m.w.push_back(1.0 / (d * d));
        }
    }
    return m;
}

// 5-point Laplacian with zero Dirichlet values outside the interior set.
void laplacian_mul(const Mesh& m, const std::vector<double>& u,
                   std::vector<double>& out) {
    const double inv_h2 = 1.0 / (m.h * m.h);
    for (int j = 0; j < m.ny; ++j) {
        for (int i = 0; i < m.nx; ++i) {
            int id = m.index[static_cast<std::size_t>(j) * m.nx + i];
            if (id < 0) continue;
            double s = 4 * u[id];
            auto nb = [&](int ii, int jj) {
                if (ii < 0 || jj < 0 || ii >= m.nx || jj >= m.ny) return;
                int nid = m.index[static_cast<std::size_t>(jj) * m.nx + ii];
                if (nid >= 0) s -= u[nid];
            };
            nb(i - 1, j);
            nb(i + 1, j);
            nb(i, j - 1);
            nb(i, j + 1);
            out[id] = s * inv_h2;
        }
    }
}

// Conjugate gradients on the Laplacian (constant diagonal, so the Jacobi
// preconditioner is a uniform scaling and is folded into the tolerances).
int cg_solve(const Mesh& m, const std::vector<double>& rhs,
             std::vector<double>& x, double rtol, int max_iter) {
    std::vector<double> r(rhs.size()), p(rhs.size()), ap(rhs.size());
    laplacian_mul(m, x, ap);
    for (std::size_t i = 0; i < rhs.size(); ++i) r[i] = rhs[i] - ap[i];
    p = r;
    double rr = dotv(r, r);
    const double target = rtol * rtol * std::max(dotv(rhs, rhs), 1e-300);
    int it = 0;
    while (rr > target && it < max_iter) {
        laplacian_mul(m, p, ap);
        double alpha = rr / dotv(p, ap);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        double rr_new = dotv(r, r);
        double betak = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < p.size(); ++i) p[i] = r[i] + betak * p[i];
        ++it;
    }
    if (rr > target)
        throw NonConvergence("quad_rayleigh: conjugate gradients stalled");
    return it;
}

} // namespace

std::string to_string(EstimateMethod m) {
    return m == EstimateMethod::Sector1D ? "Sector1D" : "Quad2D";
}

EstimateReport sector_oracle(double beta, int n) {
    if (!(beta > kPi) || !(beta <= 2 * kPi))
        throw DomainError("sector_oracle: opening must lie in (pi, 2pi]");
    if (n < 100) throw DomainError("sector_oracle: need n >= 100");

    const double h = beta / n;
    std::vector<double> v(n), psi(n);
    for (int i = 0; i < n; ++i) {
        double theta = (i + 0.5) * h;
        v[i] = potential_v(theta, beta);
        psi[i] = std::sqrt(std::sin(std::min(theta, beta - theta) / 2));
    }

    EstimateReport rep;
    rep.method = EstimateMethod::Sector1D;
    rep.discretization = n;

    // alpha enters the corner rows; tie it to lambda by damped iteration
    double alpha = 0.5;
    EigenResult eig;
    bool settled = false;
    for (int outer = 0; outer < 60; ++outer) {
        // initial shape theta^alpha near the ends: refresh the warm start's
        // corner behavior only through the matrix; psi carries over as-is
        Tridiag t = sector_matrix(beta, n, alpha, v);
        // the corner rows carry ~1/h^2 * 1/theta^2 entries, which puts the
        // attainable residual floor near 2e-12 in double; stop safely above
        eig = smallest_pair(t, v, psi, 1e-10, 500);
        rep.iterations += eig.solves;
        double lam = std::min(eig.lambda, 0.25);
        double alpha_map = 0.5 * (1 + std::sqrt(std::max(0.0, 1 - 4 * lam)));
        double alpha_next = 0.5 * (alpha + alpha_map);
        bool done = std::abs(alpha_next - alpha) <= 1e-11;
        alpha = alpha_next;
        if (done) {
            settled = true;
            break;
        }
    }
    if (!settled)
        throw NonConvergence("sector_oracle: corner-exponent iteration stalled");

    rep.lambda_min = eig.lambda;
    rep.residual = eig.residual;
    rep.eigenvector = psi;
    return rep;
}

EstimateReport quad_rayleigh_poly(const std::array<Vec2, 4>& poly, double h) {
    if (!(h > 0)) throw DomainError("quad_rayleigh: mesh step must be positive");
    Mesh m = build_mesh(poly, h);
    if (m.count < 500)
        throw MeshTooCoarse("quad_rayleigh: fewer than 500 interior nodes at "
                            "this step; decrease h");

    std::vector<double> u(m.count), au(m.count), rhs(m.count);
    // depth profile as the starting shape: positive and roughly first-mode
    for (std::size_t i = 0; i < m.count; ++i) u[i] = 1.0 / std::sqrt(m.w[i]);

    EstimateReport rep;
    rep.method = EstimateMethod::Quad2D;
    rep.discretization = h;

    double lambda = 0;
    // thin reflex domains have a tight cluster above the bottom eigenvalue,
    // so plain inverse power may need a long tail of cheap warm-started steps
    for (int power = 0; power < 20000; ++power) {
        for (std::size_t i = 0; i < m.count; ++i) rhs[i] = m.w[i] * u[i];
        // warm start: the previous eigenvector approximation, rescaled to the
        // magnitude the solve is expected to return
        std::vector<double> x = u;
        if (lambda > 0)
            for (double& xi : x) xi /= lambda;
        cg_solve(m, rhs, x, 1e-12, 200000);
        ++rep.iterations;
        u = std::move(x);

        double uwu = 0;
        for (std::size_t i = 0; i < m.count; ++i) uwu += m.w[i] * u[i] * u[i];
        double s = 1.0 / std::sqrt(uwu);
        for (double& ui : u) ui *= s;

        laplacian_mul(m, u, au);
        lambda = dotv(u, au); // u is W-normalized
        double rn = 0;
        for (std::size_t i = 0; i < m.count; ++i) {
            double ri = au[i] - lambda * m.w[i] * u[i];
            rn += ri * ri;
        }
        rep.residual = std::sqrt(rn) / norm2(au);
        if (rep.residual < 1e-9) {
            rep.lambda_min = lambda;
            rep.eigenvector = std::move(u);
            return rep;
        }
    }
    throw NonConvergence("quad_rayleigh: inverse power iteration stalled");
}

EstimateReport quad_rayleigh(const Quadrilateral& q, double h) {
    return quad_rayleigh_poly(q.vertices(), h);
}

} // namespace hardyq
