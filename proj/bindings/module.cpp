// Python bindings for the main operations: exact sector constants, the
// eigen-profile, quadrilateral normalization/classification, inequality
// sweeps, and the numerical eigenvalue oracles.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hardyq/constant.hpp"
#include "hardyq/errors.hpp"
#include "hardyq/estimator.hpp"
#include "hardyq/geometry.hpp"
#include "hardyq/profile.hpp"
#include "hardyq/verifier.hpp"

namespace py = pybind11;
using namespace hardyq;

namespace {

using PyPoint = std::array<double, 2>;
using PyPoly = std::array<PyPoint, 4>;

std::array<Vec2, 4> to_poly(const PyPoly& vs) {
    std::array<Vec2, 4> out;
    for (std::size_t i = 0; i < 4; ++i) out[i] = Vec2{vs[i][0], vs[i][1]};
    return out;
}

PyPoint from_vec(Vec2 v) { return {v.x, v.y}; }

PyPoly from_poly(const std::array<Vec2, 4>& vs) {
    return {from_vec(vs[0]), from_vec(vs[1]), from_vec(vs[2]), from_vec(vs[3])};
}

std::string classify_name(const Quadrilateral& q) {
    if (q.convex) return "Convex";
    return to_string(build_gamma(q).quad_type);
}

} // namespace

PYBIND11_MODULE(_hardyq, m) {
    m.doc() = "Hardy constants of planar quadrilaterals with one reflex corner";

    // translators run newest-first, so register bases before derived types
    py::register_exception<DomainError>(m, "DomainError");
    py::register_exception<NonConvergence>(m, "NonConvergence");
    py::register_exception<DegenerateInput>(m, "DegenerateInput");
    py::register_exception<MultipleReflex>(m, "MultipleReflex");
    py::register_exception<ClassificationAmbiguous>(m, "ClassificationAmbiguous");
    py::register_exception<MeshTooCoarse>(m, "MeshTooCoarse");
    py::register_exception<DegenerateNormal>(m, "DegenerateNormal");

    py::class_<HardyParams>(m, "HardyParams")
        .def_readonly("beta", &HardyParams::beta)
        .def_readonly("c", &HardyParams::c)
        .def_readonly("x", &HardyParams::x)
        .def_readonly("alpha", &HardyParams::alpha)
        .def("__repr__", [](const HardyParams& p) {
            return "HardyParams(beta=" + std::to_string(p.beta) +
                   ", c=" + std::to_string(p.c) + ", alpha=" +
                   std::to_string(p.alpha) + ")";
        });

    m.def("beta_critical", &beta_critical,
          "Largest opening whose constant is still exactly 1/4.");
    m.def("solve_c", &solve_c, py::arg("beta"),
          "Exact Hardy constant of a sector of the given opening.");
    m.def("alpha_from_c", &alpha_from_c, py::arg("c"),
          "Corner decay exponent for a given constant.");
    m.def("g_implicit", &g_implicit, py::arg("x"), py::arg("beta"),
          "Left side of the transcendental characterization.");

    py::class_<ProfileSolution>(m, "ProfileSolution")
        .def_readonly("params", &ProfileSolution::params)
        .def_readonly("c1", &ProfileSolution::c1)
        .def_readonly("f_half", &ProfileSolution::f_half)
        .def_readonly("c2", &ProfileSolution::c2)
        .def("series_scale", &ProfileSolution::series_scale)
        .def("psi",
             [](const ProfileSolution& s, double theta) { return psi(theta, s); },
             py::arg("theta"), "Profile value on [0, beta].")
        .def("f",
             [](const ProfileSolution& s, double theta) {
                 return f_log_deriv(theta, s);
             },
             py::arg("theta"), "Log-derivative psi'/psi on (0, beta).")
        .def("g",
             [](const ProfileSolution& s, double theta) {
                 return g_aux(theta, s);
             },
             py::arg("theta"),
             "Angle-scaled log-derivative f(theta) sin(theta) on (0, pi/2].")
        .def("ode_residual",
             [](const ProfileSolution& s, double theta, double h) {
                 return ode_residual(theta, s, h);
             },
             py::arg("theta"), py::arg("h"),
             "Centered-difference residual of the profile equation.")
        .def("__repr__", [](const ProfileSolution& s) {
            return "ProfileSolution(beta=" + std::to_string(s.params.beta) +
                   ", c=" + std::to_string(s.params.c) + ")";
        });

    m.def("build_profile", &build_profile, py::arg("beta"),
          "One-signed eigen-profile of the weighted sector problem.");
    m.def("potential_v", &potential_v, py::arg("theta"), py::arg("beta"),
          "Piecewise weight of the sector problem.");

    py::class_<Quadrilateral>(m, "Quadrilateral")
        .def_property_readonly("O", [](const Quadrilateral& q) { return from_vec(q.O); })
        .def_property_readonly("A", [](const Quadrilateral& q) { return from_vec(q.A); })
        .def_property_readonly("B", [](const Quadrilateral& q) { return from_vec(q.B); })
        .def_property_readonly("C", [](const Quadrilateral& q) { return from_vec(q.C); })
        .def_readonly("beta", &Quadrilateral::beta)
        .def_readonly("gamma", &Quadrilateral::gamma)
        .def_readonly("delta", &Quadrilateral::delta)
        .def_readonly("zeta", &Quadrilateral::zeta)
        .def_readonly("mirrored", &Quadrilateral::mirrored)
        .def_readonly("convex", &Quadrilateral::convex)
        .def_property_readonly("vertices",
                               [](const Quadrilateral& q) {
                                   return from_poly(q.vertices());
                               })
        .def("__repr__", [](const Quadrilateral& q) {
            return "Quadrilateral(type=" + classify_name(q) +
                   ", beta=" + std::to_string(q.beta) + ")";
        });

    m.def("normalize",
          [](const PyPoly& vs) { return normalize(to_poly(vs)); },
          py::arg("vertices"),
          "Bring four boundary-ordered vertices to the reference pose.");
    m.def("classify",
          [](const Quadrilateral& q) { return classify_name(q); },
          py::arg("quad"),
          "Decomposition type: A1, A2, B1, B2, B3, or Convex.");
    m.def("distance_to_boundary",
          [](const PyPoint& p, const Quadrilateral& q) {
              return distance_to_boundary(Vec2{p[0], p[1]}, q);
          },
          py::arg("p"), py::arg("quad"));
    m.def("decomposition_svg",
          [](const Quadrilateral& q) { return to_svg(q, build_gamma(q)); },
          py::arg("quad"),
          "SVG drawing of the equidistance decomposition.");

    py::class_<CheckReport>(m, "CheckReport")
        .def_readonly("name", &CheckReport::name)
        .def_readonly("grid", &CheckReport::grid)
        .def_readonly("min_margin", &CheckReport::min_margin)
        .def_readonly("worst_point", &CheckReport::worst_point)
        .def_readonly("tol", &CheckReport::tol)
        .def_readonly("passed", &CheckReport::passed)
        .def_readonly("seed", &CheckReport::seed)
        .def("__repr__", [](const CheckReport& r) {
            return "CheckReport(name='" + r.name + "', passed=" +
                   (r.passed ? "True" : "False") + ", min_margin=" +
                   std::to_string(r.min_margin) + ")";
        });

    m.def("check_lemma4", &check_lemma4, py::arg("beta"), py::arg("n"));
    m.def("check_lemma5", &check_lemma5, py::arg("beta"), py::arg("n"));
    m.def("check_lemma6", &check_lemma6, py::arg("beta"), py::arg("m"),
          py::arg("n"));
    m.def("check_lemma7", &check_lemma7, py::arg("beta"), py::arg("m"),
          py::arg("n"));
    m.def("boundary_flux", &boundary_flux, py::arg("quad"), py::arg("n"),
          "Nonnegativity sweep of the comparison flux along the curve.");
    m.def("verify_lemmas", &verify_lemmas,
          "All pointwise inequality sweeps over the pinned opening grid.");
    m.def("verify_flux", &verify_flux, py::arg("seed"),
          py::arg("quads_per_type") = 10, py::arg("n_per_segment") = 200,
          "Flux sweeps over random quadrilaterals of every type.");

    py::class_<EstimateReport>(m, "EstimateReport")
        .def_property_readonly("method",
                               [](const EstimateReport& r) {
                                   return to_string(r.method);
                               })
        .def_readonly("discretization", &EstimateReport::discretization)
        .def_readonly("lambda_min", &EstimateReport::lambda_min)
        .def_readonly("iterations", &EstimateReport::iterations)
        .def_readonly("residual", &EstimateReport::residual)
        .def_readonly("eigenvector", &EstimateReport::eigenvector)
        .def("__repr__", [](const EstimateReport& r) {
            return "EstimateReport(method='" + to_string(r.method) +
                   "', lambda_min=" + std::to_string(r.lambda_min) + ")";
        });

    m.def("sector_oracle", &sector_oracle, py::arg("beta"), py::arg("n"),
          "1D eigenvalue oracle for a sector opening.");
    m.def("quad_rayleigh", &quad_rayleigh, py::arg("quad"), py::arg("h"),
          "Discretized Rayleigh quotient on a normalized quadrilateral.");
    m.def("quad_rayleigh_poly",
          [](const PyPoly& vs, double h) {
              return quad_rayleigh_poly(to_poly(vs), h);
          },
          py::arg("vertices"), py::arg("h"),
          "Discretized Rayleigh quotient on raw vertices.");
}
