#pragma once

// Quadrilateral model for the decomposition argument: normalization to the
// reference pose, interior angles, boundary distance fields, the equidistance
// curve between the two reflex-side edges and the two far edges, the splitter
// segment to the far vertex, and the auxiliary frame used when the angle at
// the first neighbor is obtuse.
//
// Conventions after normalize(): O = (0,0) is the unique reflex vertex,
// A = (1,0), vertices O, A, B, C in counterclockwise boundary order, and the
// interior near O spans polar angles (0, beta). T denotes the x-intercept
// (-T, 0) of the supporting line of BC.

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hardyq {

struct Vec2 {
    double x = 0, y = 0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
};

double dot(Vec2 a, Vec2 b);
double cross(Vec2 a, Vec2 b);
double norm(Vec2 a);
Vec2 normalized(Vec2 a);

enum class QuadType { A1, A2, B1, B2, B3, Convex };

std::string to_string(QuadType t);

struct Quadrilateral {
    Vec2 O, A, B, C;
    double beta = 0;  // reflex angle at O, pi < beta < 2 pi
    double gamma = 0; // at A
    double delta = 0; // at B
    double zeta = 0;  // at C
    bool mirrored = false;
    bool convex = false; // no reflex vertex: angles/vertices still filled

    std::array<Vec2, 4> vertices() const { return {O, A, B, C}; }
};

// Bring four boundary-ordered points to the reference pose. Detects the
// reflex vertex by cross-product signs (after fixing orientation by signed
// area), relabels, applies the similarity transform, and mirrors if needed so
// that either the splitter angle satisfies theta0 <= beta/2 (both neighbor
// angles acute) or the obtuse neighbor angle sits at A.
Quadrilateral normalize(const std::array<Vec2, 4>& raw);

// Exact Euclidean distance from p to the near pair OA u OC and the far pair
// AB u BC; the boundary distance is the smaller of the two.
double distance_minus(Vec2 p, const Quadrilateral& q);
double distance_plus(Vec2 p, const Quadrilateral& q);
double distance_to_boundary(Vec2 p, const Quadrilateral& q);

bool point_inside(Vec2 p, const Quadrilateral& q);

// Parabola directrix in the normal form used throughout: the directrix's
// unit normal (sin_a, cos_a) points toward the focus O, which sits at
// distance ell; points of the parabola satisfy r = ell/(1 - sin(theta + a)).
struct DirectrixLine {
    double sin_a = 0, cos_a = 0, ell = 0;
};

enum class SegmentKind { Line, Parabola };
enum class NearMinus { EdgeOA, EdgeOC, VertexO };
enum class NearPlus { EdgeAB, EdgeBC };

struct GammaSegment {
    SegmentKind kind = SegmentKind::Line;
    double theta_lo = 0, theta_hi = 0; // polar angles at O
    NearMinus near_minus = NearMinus::EdgeOA;
    NearPlus near_plus = NearPlus::EdgeAB;
    Vec2 point, dir;         // line form (kind == Line)
    DirectrixLine directrix; // parabola form (kind == Parabola), focus O
};

// Point of a segment at polar angle theta (theta inside its range).
Vec2 gamma_point(const GammaSegment& seg, double theta);

struct GammaCurve {
    std::vector<GammaSegment> segments; // consecutive, shared endpoints
    QuadType quad_type = QuadType::Convex;
    Vec2 S;         // meeting point with the bisector at B
    double theta0 = 0; // polar angle of S
    std::optional<double> theta0_prime; // B3 only (coincides with theta0)
    std::array<Vec2, 2> gamma_star;     // splitter segment S -> B
};

// Construct the equidistance curve segment-by-segment and classify the
// quadrilateral. Requires a normalized, non-convex input.
GammaCurve build_gamma(const Quadrilateral& q);

// Exterior unit normal of the focus-O parabola at polar angle theta:
// (cos theta - sin_a, sin theta - cos_a)/sqrt(2 - 2 sin(theta + a)).
Vec2 parabola_normal(double theta, const DirectrixLine& dx);

// Second orthonormal frame for obtuse-at-A quadrilaterals: origin on the
// extension of AB beyond A at distance -cos(gamma), rotated so the frame's
// first axis points along world angle pi - gamma.
struct AuxFrame {
    Vec2 origin;
    double rotation = 0;
};

AuxFrame aux_frame(const Quadrilateral& q);

// Polar angle of p in the auxiliary frame.
double aux_theta1(Vec2 p, const AuxFrame& frame);

// Cotangent relations tying the polar angle theta on a curve piece to the
// auxiliary-frame angle theta1. Defined for obtuse-at-A quadrilaterals on the
// pieces that have such a relation: the first segment, the second segment of
// the line-parabola-parabola-line pattern, and the third segment of the
// pattern that ends in two lines. theta must lie in the segment's range.
double theta1_of_theta(double theta, const Quadrilateral& q, const AuxFrame& frame,
                       const GammaCurve& gc, std::size_t segment_index);

// SVG rendering of the decomposition: outline, curve pieces color-coded by
// kind, the splitter, and the auxiliary frame axes when present.
std::string to_svg(const Quadrilateral& q, const GammaCurve& gc);

} // namespace hardyq
