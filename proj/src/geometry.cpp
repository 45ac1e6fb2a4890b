#include "hardyq/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "hardyq/errors.hpp"

namespace hardyq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTieTol = 1e-9; // classification tie guard

Vec2 rot90ccw(Vec2 v) { return {-v.y, v.x}; }

double atan2pos(Vec2 p) {
    double a = std::atan2(p.y, p.x);
    if (a < 0)
        a += 2 * kPi;
    return a;
}

double seg_dist(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 v = b - a, w = p - a;
    const double t = std::clamp(dot(w, v) / dot(v, v), 0.0, 1.0);
    return norm(w - v * t);
}

int orient_sign(Vec2 a, Vec2 b, Vec2 c) {
    const double v = cross(b - a, c - a);
    return (v > 0) - (v < 0);
}

// Proper or touching intersection of segments ab and cd.
bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
    const int o1 = orient_sign(a, b, c), o2 = orient_sign(a, b, d);
    const int o3 = orient_sign(c, d, a), o4 = orient_sign(c, d, b);
    if (o1 != o2 && o3 != o4)
        return true;
    auto on = [](Vec2 p, Vec2 q, Vec2 r) {
        return orient_sign(p, q, r) == 0 && std::min(p.x, q.x) <= r.x &&
               r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
               r.y <= std::max(p.y, q.y);
    };
    return on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b);
}

// Interior angle at vertex b of the ccw chain a -> b -> c; in (0, 2 pi).
double interior_angle(Vec2 a, Vec2 b, Vec2 c) {
    const Vec2 ein = b - a, eout = c - b;
    const double turn = std::atan2(cross(ein, eout), dot(ein, eout));
    return kPi - turn;
}

struct Pose {
    Vec2 shift;
    double rot, scale;
    Vec2 apply(Vec2 p) const {
        const Vec2 t = p - shift;
        const double c = std::cos(rot), s = std::sin(rot);
        return Vec2{c * t.x - s * t.y, s * t.x + c * t.y} * scale;
    }
};

// Fill the angle fields of an already-posed quadrilateral.
void fill_angles(Quadrilateral& q) {
    q.beta = interior_angle(q.C, q.O, q.A);
    q.gamma = interior_angle(q.O, q.A, q.B);
    q.delta = interior_angle(q.A, q.B, q.C);
    q.zeta = interior_angle(q.B, q.C, q.O);
}

// Apply the similarity carrying o to the origin and a to (1, 0), to all four
// points of the ccw list (o, a, b, c).
Quadrilateral pose_quad(Vec2 o, Vec2 a, Vec2 b, Vec2 c) {
    const Vec2 oa = a - o;
    const Pose pose{o, -std::atan2(oa.y, oa.x), 1.0 / norm(oa)};
    Quadrilateral q;
    q.O = {0.0, 0.0};
    q.A = {1.0, 0.0}; // by construction; avoid residual rounding
    q.B = pose.apply(b);
    q.C = pose.apply(c);
    fill_angles(q);
    return q;
}

Vec2 bisector_dir_at(Vec2 v, Vec2 n1, Vec2 n2) {
    return normalized(normalized(n1 - v) + normalized(n2 - v));
}

// Meeting point of the equidistance curve with the interior bisector at B:
// march outward until the near pair takes over, then bisect.
Vec2 find_gamma_apex(const Quadrilateral& q) {
    const Vec2 dir = bisector_dir_at(q.B, q.A, q.C);
    auto h = [&](double s) {
        const Vec2 p = q.B + dir * s;
        return distance_minus(p, q) - distance_plus(p, q);
    };
    double lo = 0.0, hi = 1e-6;
    while (h(hi) > 0) {
        if (!point_inside(q.B + dir * hi, q) || hi > 1e9) {
            // the doubling overshot the far side of the polygon; the sign
            // change may still sit between the last inside sample and the
            // exit point, so clip the bracket to just inside the exit
            double in = lo, out = std::min(hi, 1e9);
            for (int it = 0; it < 90; ++it) {
                const double mid = 0.5 * (in + out);
                (point_inside(q.B + dir * mid, q) ? in : out) = mid;
            }
            if (h(in) > 0)
                throw DegenerateInput(
                    "normalize: equidistance curve leaves the polygon before "
                    "reaching the bisector at B");
            hi = in;
            break;
        }
        lo = hi;
        hi *= 2;
    }
    for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (lo + hi);
        (h(mid) > 0 ? lo : hi) = mid;
    }
    const Vec2 s = q.B + dir * (0.5 * (lo + hi));
    if (!point_inside(s, q))
        throw DegenerateInput("normalize: bisector apex falls outside the polygon");
    return s;
}

DirectrixLine make_directrix(Vec2 p0, Vec2 p1) {
    const Vec2 u = normalized(p1 - p0);
    Vec2 n = rot90ccw(u);
    double ell = dot(n, Vec2{0, 0} - p0);
    if (ell < 0) {
        n = n * -1.0;
        ell = -ell;
    }
    if (ell <= 1e-12)
        throw DegenerateInput("build_gamma: focus lies on a directrix line");
    return DirectrixLine{n.x, n.y, ell};
}

// Bisector line of two edge supporting lines, through a known point on it.
// n1 and n2 are the interior-positive unit normals; the locus of equal
// distances is a line normal to n1 - n2.
GammaSegment bisector_line_through(Vec2 point, Vec2 n1, Vec2 n2) {
    GammaSegment seg;
    seg.kind = SegmentKind::Line;
    seg.point = point;
    seg.dir = normalized(rot90ccw(n1 - n2));
    return seg;
}

} // namespace

double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
double norm(Vec2 a) { return std::hypot(a.x, a.y); }
Vec2 normalized(Vec2 a) {
    const double n = norm(a);
    return {a.x / n, a.y / n};
}

std::string to_string(QuadType t) {
    switch (t) {
    case QuadType::A1: return "A1";
    case QuadType::A2: return "A2";
    case QuadType::B1: return "B1";
    case QuadType::B2: return "B2";
    case QuadType::B3: return "B3";
    default: return "Convex";
    }
}

Quadrilateral normalize(const std::array<Vec2, 4>& raw) {
    std::array<Vec2, 4> p = raw;

    double scale = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            scale = std::max(scale, norm(p[i] - p[j]));
    if (scale <= 0)
        throw DegenerateInput("normalize: all vertices coincide");
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (norm(p[i] - p[j]) < 1e-12 * scale)
                throw DegenerateInput("normalize: repeated vertex");

    // simplicity: the two pairs of opposite edges may not cross
    if (segments_intersect(p[0], p[1], p[2], p[3]) ||
        segments_intersect(p[1], p[2], p[3], p[0]))
        throw DegenerateInput("normalize: self-intersecting boundary");

    double area2 = 0;
    for (int i = 0; i < 4; ++i)
        area2 += cross(p[i], p[(i + 1) % 4]);
    if (std::abs(area2) < 1e-14 * scale * scale)
        throw DegenerateInput("normalize: zero-area polygon");
    if (area2 < 0)
        std::reverse(p.begin(), p.end());

    int reflex = -1, reflex_count = 0;
    for (int i = 0; i < 4; ++i) {
        const double cr = cross(p[i] - p[(i + 3) % 4], p[(i + 1) % 4] - p[i]);
        if (std::abs(cr) < 1e-12 * scale * scale)
            throw DegenerateInput("normalize: collinear consecutive vertices");
        if (cr < 0) {
            reflex = i;
            ++reflex_count;
        }
    }
    if (reflex_count > 1)
        throw MultipleReflex("normalize: more than one reflex vertex");

    if (reflex_count == 0) {
        Quadrilateral q = pose_quad(p[0], p[1], p[2], p[3]);
        q.convex = true;
        return q;
    }

    Quadrilateral q = pose_quad(p[reflex], p[(reflex + 1) % 4], p[(reflex + 2) % 4],
                                p[(reflex + 3) % 4]);

    bool mirror = false;
    if (q.gamma > kPi / 2 || q.zeta > kPi / 2) {
        mirror = q.zeta > kPi / 2; // obtuse neighbor angle goes to A
    } else {
        const Vec2 s = find_gamma_apex(q);
        mirror = atan2pos(s) > q.beta / 2; // apex goes to the lower half
    }
    if (mirror) {
        auto t = [&](Vec2 v) { // reflect across OA, rotate the wedge back
            const Vec2 m{v.x, -v.y};
            const double cb = std::cos(q.beta), sb = std::sin(q.beta);
            return Vec2{cb * m.x - sb * m.y, sb * m.x + cb * m.y};
        };
        q = pose_quad(Vec2{0, 0}, t(q.C), t(q.B), t(q.A));
        q.mirrored = true;
    }
    return q;
}

double distance_minus(Vec2 p, const Quadrilateral& q) {
    return std::min(seg_dist(p, q.O, q.A), seg_dist(p, q.C, q.O));
}

double distance_plus(Vec2 p, const Quadrilateral& q) {
    return std::min(seg_dist(p, q.A, q.B), seg_dist(p, q.B, q.C));
}

double distance_to_boundary(Vec2 p, const Quadrilateral& q) {
    return std::min(distance_minus(p, q), distance_plus(p, q));
}

bool point_inside(Vec2 p, const Quadrilateral& q) {
    const auto v = q.vertices();
    bool in = false;
    for (int i = 0; i < 4; ++i) {
        const Vec2 a = v[i], b = v[(i + 1) % 4];
        if ((a.y > p.y) != (b.y > p.y)) {
            const double xint = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if (p.x < xint)
                in = !in;
        }
    }
    return in;
}

Vec2 gamma_point(const GammaSegment& seg, double theta) {
    const Vec2 e{std::cos(theta), std::sin(theta)};
    if (seg.kind == SegmentKind::Line) {
        const double denom = cross(e, seg.dir);
        if (std::abs(denom) < 1e-15)
            throw DomainError("gamma_point: ray parallel to the segment line");
        return e * (cross(seg.point, seg.dir) / denom);
    }
    const double s = std::sin(theta) * seg.directrix.cos_a + std::cos(theta) * seg.directrix.sin_a;
    return e * (seg.directrix.ell / (1.0 - s));
}

Vec2 parabola_normal(double theta, const DirectrixLine& dx) {
    const double s = std::sin(theta) * dx.cos_a + std::cos(theta) * dx.sin_a;
    const double denom = 2.0 - 2.0 * s;
    if (denom <= 1e-14)
        throw DegenerateNormal("parabola_normal: direction at infinity");
    return Vec2{std::cos(theta) - dx.sin_a, std::sin(theta) - dx.cos_a} *
           (1.0 / std::sqrt(denom));
}

GammaCurve build_gamma(const Quadrilateral& q) {
    if (q.convex)
        throw DomainError("build_gamma: requires a non-convex quadrilateral");
    if (norm(q.O) > 1e-12 || norm(q.A - Vec2{1, 0}) > 1e-12)
        throw DomainError("build_gamma: input must be normalized first");

    for (double ang : {q.gamma, q.zeta})
        if (ang != kPi / 2 && std::abs(ang - kPi / 2) < kTieTol)
            throw ClassificationAmbiguous(
                "build_gamma: neighbor angle within tie tolerance of pi/2");

    GammaCurve gc;
    gc.S = find_gamma_apex(q);
    gc.theta0 = atan2pos(gc.S);
    gc.gamma_star = {gc.S, q.B};
    const double beta = q.beta, th0 = gc.theta0;

    const bool bfam = q.gamma > kPi / 2;

    // interior-positive unit normals of the four edge supporting lines
    const Vec2 nOA{0, 1};
    const Vec2 nOC = normalized(rot90ccw(q.O - q.C));
    const Vec2 nAB = normalized(rot90ccw(q.B - q.A));
    const Vec2 nBC = normalized(rot90ccw(q.C - q.B));

    auto line_at_A = [&] {
        GammaSegment s;
        s.kind = SegmentKind::Line;
        s.point = q.A;
        s.dir = bisector_dir_at(q.A, q.O, q.B);
        s.near_minus = NearMinus::EdgeOA;
        s.near_plus = NearPlus::EdgeAB;
        return s;
    };
    auto line_at_C = [&] {
        GammaSegment s;
        s.kind = SegmentKind::Line;
        s.point = q.C;
        s.dir = bisector_dir_at(q.C, q.O, q.B);
        s.near_minus = NearMinus::EdgeOC;
        s.near_plus = NearPlus::EdgeBC;
        return s;
    };
    auto parab = [&](NearPlus which) {
        GammaSegment s;
        s.kind = SegmentKind::Parabola;
        s.near_minus = NearMinus::VertexO;
        s.near_plus = which;
        s.directrix = which == NearPlus::EdgeAB ? make_directrix(q.A, q.B)
                                                : make_directrix(q.B, q.C);
        return s;
    };

    auto classify_tie = [&](double v, double boundary, const char* what) {
        if (v != boundary && std::abs(v - boundary) < kTieTol)
            throw ClassificationAmbiguous(std::string("build_gamma: ") + what +
                                          " within tie tolerance of a pattern boundary");
    };

    std::vector<GammaSegment>& segs = gc.segments;
    if (!bfam) {
        classify_tie(th0, kPi / 2, "apex angle");
        if (th0 >= kPi / 2) { // line, parabola, parabola, line
            gc.quad_type = QuadType::A1;
            segs = {line_at_A(), parab(NearPlus::EdgeAB), parab(NearPlus::EdgeBC),
                    line_at_C()};
            segs[0].theta_lo = 0, segs[0].theta_hi = kPi / 2;
            segs[1].theta_lo = kPi / 2, segs[1].theta_hi = th0;
            segs[2].theta_lo = th0, segs[2].theta_hi = beta - kPi / 2;
            segs[3].theta_lo = beta - kPi / 2, segs[3].theta_hi = beta;
        } else { // line, line, parabola, line
            gc.quad_type = QuadType::A2;
            GammaSegment mid = bisector_line_through(gc.S, nOA, nBC);
            mid.near_minus = NearMinus::EdgeOA;
            mid.near_plus = NearPlus::EdgeBC;
            segs = {line_at_A(), mid, parab(NearPlus::EdgeBC), line_at_C()};
            segs[0].theta_lo = 0, segs[0].theta_hi = th0;
            segs[1].theta_lo = th0, segs[1].theta_hi = kPi / 2;
            segs[2].theta_lo = kPi / 2, segs[2].theta_hi = beta - kPi / 2;
            segs[3].theta_lo = beta - kPi / 2, segs[3].theta_hi = beta;
        }
    } else {
        classify_tie(th0, kPi / 2, "apex angle");
        classify_tie(th0, beta - kPi / 2, "apex angle");
        if (th0 >= kPi / 2 && th0 <= beta - kPi / 2) {
            gc.quad_type = QuadType::B1;
            segs = {line_at_A(), parab(NearPlus::EdgeAB), parab(NearPlus::EdgeBC),
                    line_at_C()};
            segs[0].theta_lo = 0, segs[0].theta_hi = kPi / 2;
            segs[1].theta_lo = kPi / 2, segs[1].theta_hi = th0;
            segs[2].theta_lo = th0, segs[2].theta_hi = beta - kPi / 2;
            segs[3].theta_lo = beta - kPi / 2, segs[3].theta_hi = beta;
        } else if (th0 < kPi / 2) {
            gc.quad_type = QuadType::B2;
            GammaSegment mid = bisector_line_through(gc.S, nOA, nBC);
            mid.near_minus = NearMinus::EdgeOA;
            mid.near_plus = NearPlus::EdgeBC;
            segs = {line_at_A(), mid, parab(NearPlus::EdgeBC), line_at_C()};
            segs[0].theta_lo = 0, segs[0].theta_hi = th0;
            segs[1].theta_lo = th0, segs[1].theta_hi = kPi / 2;
            segs[2].theta_lo = kPi / 2, segs[2].theta_hi = beta - kPi / 2;
            segs[3].theta_lo = beta - kPi / 2, segs[3].theta_hi = beta;
        } else {
            gc.quad_type = QuadType::B3;
            gc.theta0_prime = th0; // the far junction; coincides with theta0
            GammaSegment mid = bisector_line_through(gc.S, nOC, nAB);
            mid.near_minus = NearMinus::EdgeOC;
            mid.near_plus = NearPlus::EdgeAB;
            segs = {line_at_A(), parab(NearPlus::EdgeAB), mid, line_at_C()};
            segs[0].theta_lo = 0, segs[0].theta_hi = kPi / 2;
            segs[1].theta_lo = kPi / 2, segs[1].theta_hi = beta - kPi / 2;
            segs[2].theta_lo = beta - kPi / 2, segs[2].theta_hi = th0;
            segs[3].theta_lo = th0, segs[3].theta_hi = beta;
        }
    }

    for (const auto& s : segs) {
        if (s.theta_hi < s.theta_lo - 1e-12)
            throw DegenerateInput("build_gamma: segment range collapsed");
        if (s.theta_hi - s.theta_lo > 1e-9) {
            const Vec2 m = gamma_point(s, 0.5 * (s.theta_lo + s.theta_hi));
            if (!point_inside(m, q))
                throw DegenerateInput("build_gamma: curve leaves the polygon");
        }
    }
    return gc;
}

AuxFrame aux_frame(const Quadrilateral& q) {
    if (!(q.gamma > kPi / 2))
        throw DomainError("aux_frame: requires an obtuse angle at A");
    const Vec2 u = normalized(q.A - q.B);
    AuxFrame fr;
    fr.origin = q.A + u * (-std::cos(q.gamma));
    fr.rotation = kPi - q.gamma;
    return fr;
}

double aux_theta1(Vec2 p, const AuxFrame& frame) {
    const Vec2 rel = p - frame.origin;
    const double ca = std::cos(frame.rotation), sa = std::sin(frame.rotation);
    return std::atan2(-sa * rel.x + ca * rel.y, ca * rel.x + sa * rel.y);
}

double theta1_of_theta(double theta, const Quadrilateral& q, const AuxFrame& frame,
                       const GammaCurve& gc, std::size_t segment_index) {
    (void)frame;
    if (!(q.gamma > kPi / 2))
        throw DomainError("theta1_of_theta: requires an obtuse angle at A");
    if (segment_index >= gc.segments.size())
        throw DomainError("theta1_of_theta: segment index out of range");
    const GammaSegment& seg = gc.segments[segment_index];
    if (theta < seg.theta_lo - 1e-12 || theta > seg.theta_hi + 1e-12)
        throw DomainError("theta1_of_theta: theta outside the segment range");

    double cot1;
    if (seg.kind == SegmentKind::Line && seg.near_minus == NearMinus::EdgeOA &&
        seg.near_plus == NearPlus::EdgeAB) {
        cot1 = -std::cos(q.gamma) / std::tan(theta) + std::sin(q.gamma);
    } else if (seg.kind == SegmentKind::Parabola && seg.near_plus == NearPlus::EdgeAB) {
        cot1 = -std::cos(theta + q.gamma);
    } else if (seg.kind == SegmentKind::Line && seg.near_minus == NearMinus::EdgeOC &&
               seg.near_plus == NearPlus::EdgeAB) {
        cot1 = -std::cos(q.beta + q.gamma) / std::tan(q.beta - theta) -
               std::sin(q.beta + q.gamma);
    } else {
        throw DomainError("theta1_of_theta: no auxiliary relation on this segment");
    }
    return std::atan2(1.0, cot1);
}

std::string to_svg(const Quadrilateral& q, const GammaCurve& gc) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const Vec2& v : q.vertices()) {
        xmin = std::min(xmin, v.x), xmax = std::max(xmax, v.x);
        ymin = std::min(ymin, v.y), ymax = std::max(ymax, v.y);
    }
    const double w = xmax - xmin, h = ymax - ymin, m = 0.08 * std::max(w, h);
    std::ostringstream os;
    os.precision(10);
    // y axis flipped so the mathematical orientation reads naturally
    os << "<svg xmlns='http://www.w3.org/2000/svg' viewBox='" << xmin - m << ' '
       << -(ymax + m) << ' ' << w + 2 * m << ' ' << h + 2 * m << "'>\n";
    auto pt = [](Vec2 v) {
        std::ostringstream s;
        s.precision(10);
        s << v.x << ',' << -v.y;
        return s.str();
    };
    os << "<polygon points='";
    for (const Vec2& v : q.vertices())
        os << pt(v) << ' ';
    os << "' fill='#f5f1e8' stroke='#444' stroke-width='" << 0.006 * (w + h) << "'/>\n";
    for (const auto& s : gc.segments) {
        os << "<polyline fill='none' stroke='"
           << (s.kind == SegmentKind::Line ? "#1f77b4" : "#ff7f0e")
           << "' stroke-width='" << 0.006 * (w + h) << "' points='";
        for (int i = 0; i <= 64; ++i) {
            const double th = s.theta_lo + (s.theta_hi - s.theta_lo) * i / 64.0;
            if (th <= 0 || th >= q.beta)
                continue;
            os << pt(gamma_point(s, th)) << ' ';
        }
        os << "'/>\n";
    }
    os << "<line x1='" << gc.gamma_star[0].x << "' y1='" << -gc.gamma_star[0].y
       << "' x2='" << gc.gamma_star[1].x << "' y2='" << -gc.gamma_star[1].y
       << "' stroke='#2ca02c' stroke-width='" << 0.006 * (w + h)
       << "' stroke-dasharray='" << 0.02 * (w + h) << "'/>\n";
    os << "<circle cx='" << gc.S.x << "' cy='" << -gc.S.y << "' r='" << 0.012 * (w + h)
       << "' fill='#d62728'/>\n";
    if (q.gamma > kPi / 2) {
        const AuxFrame fr = aux_frame(q);
        for (double ang : {fr.rotation, fr.rotation + kPi / 2}) {
            const Vec2 tip = fr.origin + Vec2{std::cos(ang), std::sin(ang)} * (0.25 * (w + h));
            os << "<line x1='" << fr.origin.x << "' y1='" << -fr.origin.y << "' x2='"
               << tip.x << "' y2='" << -tip.y
               << "' stroke='#9467bd' stroke-width='" << 0.004 * (w + h) << "'/>\n";
        }
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace hardyq
