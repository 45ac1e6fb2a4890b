// hardyq: Hardy constants of planar quadrilaterals with one reflex corner.
//
// Subcommands
//   constant        exact constant of a sector opening
//   critical-angle  largest opening whose constant is still 1/4
//   profile         one-signed eigen-profile of the sector problem (CSV/JSON)
//   classify        normalize a quadrilateral, classify it, report its constant
//   verify          inequality sweeps (lemma grids, boundary-flux margins)
//   estimate        2D discretized Rayleigh quotient on a quadrilateral
//   sector          1D eigenvalue oracle for a sector opening
//
// Exit codes: 0 success, 1 usage error, 2 domain/computation error,
// 3 verification failure (a check reported a negative margin).

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hardyq/constant.hpp"
#include "hardyq/errors.hpp"
#include "hardyq/estimator.hpp"
#include "hardyq/geometry.hpp"
#include "hardyq/profile.hpp"
#include "hardyq/verifier.hpp"

namespace {

using nlohmann::json;
using namespace hardyq;

constexpr double kPi = 3.141592653589793238462643383279502884;

// Errors in how the tool was invoked (bad flag combinations, unreadable or
// malformed input files). Reported with exit code 1.
struct UsageError : std::runtime_error {
    explicit UsageError(const std::string& what) : std::runtime_error(what) {}
};

double to_radians(double value, bool degrees) {
    return degrees ? value * kPi / 180.0 : value;
}

// Openings a hair above the full disc come from rounded literals such as
// 6.2832; snap them back instead of rejecting.
double clamp_opening(double beta) {
    if (beta > 2 * kPi && beta <= 2 * kPi + 1e-3) return 2 * kPi;
    return beta;
}

std::array<Vec2, 4> load_quad(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("--quad: cannot open file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw UsageError("--quad: file '" + path + "' is not valid JSON: " +
                         e.what());
    }
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array() ||
        j["vertices"].size() != 4)
        throw UsageError("--quad: expected {\"vertices\": [[x,y],[x,y],[x,y],[x,y]]}");
    std::array<Vec2, 4> raw;
    for (std::size_t i = 0; i < 4; ++i) {
        const json& v = j["vertices"][i];
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
            throw UsageError("--quad: vertex " + std::to_string(i) +
                             " is not a [x,y] number pair");
        raw[i] = Vec2{v[0].get<double>(), v[1].get<double>()};
    }
    return raw;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw UsageError("--out: cannot open file '" + out_path + "'");
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
}

void write_svg(const std::string& svg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw UsageError("--svg: cannot open file '" + path + "'");
    out << svg;
}

json report_to_json(const CheckReport& rep) {
    return json{{"name", rep.name},
                {"grid", rep.grid},
                {"min_margin", rep.min_margin},
                {"worst_point", rep.worst_point},
                {"tol", rep.tol},
                {"passed", rep.passed},
                {"seed", rep.seed}};
}

json estimate_to_json(const EstimateReport& rep) {
    return json{{"method", to_string(rep.method)},
                {"discretization", rep.discretization},
                {"lambda_min", rep.lambda_min},
                {"iterations", rep.iterations},
                {"residual", rep.residual}};
}

// g is the angle-scaled log-derivative near the corner; past the first
// junction fall back to its defining product.
double g_column(double theta, const ProfileSolution& sol) {
    if (theta <= kPi / 2) return g_aux(theta, sol);
    return f_log_deriv(theta, sol) * std::sin(theta);
}

std::string format_row(double a, double b, double c, double d, double e) {
    char buf[192];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g", a, b, c, d, e);
    return buf;
}

// Minimal line plot of the profile: psi over theta with a baseline axis.
std::string profile_plot_svg(const ProfileSolution& sol, int n) {
    const double beta = sol.params.beta;
    const double w = 800, h = 400, mx = 50, my = 30;
    double psi_max = 0;
    std::vector<Vec2> pts;
    pts.reserve(static_cast<std::size_t>(n) + 2);
    for (int i = 0; i <= n + 1; ++i) {
        double theta = beta * i / (n + 1);
        double value = psi(theta, sol);
        psi_max = std::max(psi_max, value);
        pts.push_back(Vec2{theta, value});
    }
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w
        << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << " " << h
        << "\">\n";
    svg << "  <rect width=\"" << w << "\" height=\"" << h
        << "\" fill=\"white\"/>\n";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", beta);
    svg << "  <line x1=\"" << mx << "\" y1=\"" << h - my << "\" x2=\""
        << w - mx << "\" y2=\"" << h - my
        << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    svg << "  <line x1=\"" << mx << "\" y1=\"" << my << "\" x2=\"" << mx
        << "\" y2=\"" << h - my << "\" stroke=\"#888\" stroke-width=\"1\"/>\n";
    svg << "  <text x=\"" << w - mx << "\" y=\"" << h - my + 20
        << "\" font-size=\"12\" text-anchor=\"end\">theta = " << buf
        << "</text>\n";
    svg << "  <text x=\"" << mx - 8 << "\" y=\"" << my
        << "\" font-size=\"12\" text-anchor=\"end\">psi</text>\n";
    svg << "  <polyline fill=\"none\" stroke=\"#1a6faf\" stroke-width=\"1.5\" "
           "points=\"";
    for (const Vec2& p : pts) {
        double px = mx + (w - 2 * mx) * p.x / beta;
        double py = h - my - (h - 2 * my) * (psi_max > 0 ? p.y / psi_max : 0);
        char pb[64];
        std::snprintf(pb, sizeof pb, "%.2f,%.2f ", px, py);
        svg << pb;
    }
    svg << "\"/>\n</svg>\n";
    return svg.str();
}

int run_constant(double beta, bool degrees) {
    double b = clamp_opening(to_radians(beta, degrees));
    HardyParams p = solve_c(b);
    json out{{"beta", p.beta}, {"c", p.c}, {"alpha", p.alpha}, {"x", p.x}};
    write_output(out.dump(2), "");
    return 0;
}

int run_critical_angle() {
    double bcr = beta_critical();
    json out{{"beta_cr", bcr}, {"beta_cr_over_pi", bcr / kPi}};
    write_output(out.dump(2), "");
    return 0;
}

int run_profile(double beta, bool degrees, int n, const std::string& format,
                const std::string& out_path, const std::string& svg_path) {
    if (n < 2) throw UsageError("--n: need at least 2 sample points");
    double b = clamp_opening(to_radians(beta, degrees));
    ProfileSolution sol = build_profile(b);

    if (format == "csv") {
        std::ostringstream csv;
        csv << "theta,psi,f,g,V\n";
        for (int i = 1; i <= n; ++i) {
            double theta = b * i / (n + 1);
            csv << format_row(theta, psi(theta, sol), f_log_deriv(theta, sol),
                              g_column(theta, sol), potential_v(theta, b))
                << "\n";
        }
        write_output(csv.str(), out_path);
    } else if (format == "json") {
        json rows = json::array();
        for (int i = 1; i <= n; ++i) {
            double theta = b * i / (n + 1);
            rows.push_back({theta, psi(theta, sol), f_log_deriv(theta, sol),
                            g_column(theta, sol), potential_v(theta, b)});
        }
        json out{{"beta", b},
                 {"c", sol.params.c},
                 {"alpha", sol.params.alpha},
                 {"c1", sol.c1},
                 {"c2", sol.c2},
                 {"columns", {"theta", "psi", "f", "g", "V"}},
                 {"rows", rows}};
        write_output(out.dump(2), out_path);
    } else {
        throw UsageError("--format: expected 'json' or 'csv'");
    }
    if (!svg_path.empty()) write_svg(profile_plot_svg(sol, 512), svg_path);
    return 0;
}

int run_classify(const std::string& quad_path, const std::string& svg_path) {
    Quadrilateral q = normalize(load_quad(quad_path));
    double c = q.convex ? 0.25 : solve_c(q.beta).c;
    json vertices = json::array();
    for (Vec2 v : q.vertices()) vertices.push_back({v.x, v.y});
    std::string type = "Convex";
    std::optional<GammaCurve> gc;
    if (!q.convex) {
        gc = build_gamma(q);
        type = to_string(gc->quad_type);
    }
    const double deg = 180.0 / kPi;
    json out{{"type", type},
             {"c", c},
             {"alpha", alpha_from_c(c)},
             {"mirrored", q.mirrored},
             {"vertices", vertices},
             {"angles",
              {{"beta_rad", q.beta},
               {"beta_deg", q.beta * deg},
               {"gamma_rad", q.gamma},
               {"gamma_deg", q.gamma * deg},
               {"delta_rad", q.delta},
               {"delta_deg", q.delta * deg},
               {"zeta_rad", q.zeta},
               {"zeta_deg", q.zeta * deg}}}};
    write_output(out.dump(2), "");
    if (!svg_path.empty()) {
        if (!gc) throw UsageError("--svg: no equidistance curve for a convex "
                                  "quadrilateral");
        write_svg(to_svg(q, *gc), svg_path);
    }
    return 0;
}

int run_verify(std::optional<double> beta, bool degrees,
               const std::string& quad_path, std::uint64_t seed, int samples) {
    if (samples < 2) throw UsageError("--samples: need at least 2 per segment");
    std::vector<CheckReport> reports;
    if (!quad_path.empty()) {
        Quadrilateral q = normalize(load_quad(quad_path));
        if (q.convex)
            throw DomainError("verify: the boundary-flux check needs a "
                              "quadrilateral with a reflex corner");
        reports.push_back(boundary_flux(q, samples));
    } else if (beta) {
        double b = clamp_opening(to_radians(*beta, degrees));
        reports.push_back(check_lemma4(b, 10000));
        reports.push_back(check_lemma5(b, 1000));
        reports.push_back(check_lemma6(b, 50, 200));
        reports.push_back(check_lemma7(b, 20, 200));
    } else {
        reports = verify_lemmas();
        std::vector<CheckReport> flux = verify_flux(seed, 10, samples);
        reports.insert(reports.end(), flux.begin(), flux.end());
    }
    json out = json::array();
    bool all_passed = true;
    for (const CheckReport& rep : reports) {
        out.push_back(report_to_json(rep));
        all_passed = all_passed && rep.passed;
    }
    write_output(out.dump(2), "");
    return all_passed ? 0 : 3;
}

int run_estimate(const std::string& quad_path, double h, int refine) {
    if (refine < 0) throw UsageError("--refine: must be >= 0");
    Quadrilateral q = normalize(load_quad(quad_path));
    json out = json::array();
    for (int k = 0; k <= refine; ++k)
        out.push_back(estimate_to_json(quad_rayleigh(q, h / (1 << k))));
    write_output(out.dump(2), "");
    return 0;
}

int run_sector(double beta, bool degrees, int n) {
    double b = clamp_opening(to_radians(beta, degrees));
    EstimateReport rep = sector_oracle(b, n);
    write_output(estimate_to_json(rep).dump(2), "");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hardy constants of planar quadrilaterals with one reflex "
                 "corner"};
    app.require_subcommand(1);

    double beta = 0;
    bool degrees = false;
    int n_profile = 512;
    int n_sector = 4000;
    int samples = 200;
    int refine = 0;
    double h = 0;
    std::uint64_t seed = 2024;
    std::string quad_path, out_path, svg_path, format = "csv";

    CLI::App* c_const = app.add_subcommand("constant",
                                           "Exact constant of a sector opening");
    c_const->add_option("--beta", beta, "Opening angle")->required();
    c_const->add_flag("--degrees", degrees, "Interpret angles in degrees");

    app.add_subcommand("critical-angle",
                       "Largest opening whose constant is still 1/4");

    CLI::App* c_prof = app.add_subcommand("profile",
                                          "Eigen-profile of the sector problem");
    c_prof->add_option("--beta", beta, "Opening angle")->required();
    c_prof->add_flag("--degrees", degrees, "Interpret angles in degrees");
    c_prof->add_option("--n", n_profile, "Number of interior sample rows");
    c_prof->add_option("--format", format, "Output format: csv or json");
    c_prof->add_option("--out", out_path, "Write table to this file");
    c_prof->add_option("--svg", svg_path, "Write a plot to this SVG file");

    CLI::App* c_class = app.add_subcommand("classify",
                                           "Normalize and classify a "
                                           "quadrilateral");
    c_class->add_option("--quad", quad_path, "JSON file with vertices")
        ->required();
    c_class->add_option("--svg", svg_path,
                        "Write the decomposition to this SVG file");

    CLI::App* c_verify = app.add_subcommand("verify",
                                            "Inequality sweeps; exit 3 on any "
                                            "failure");
    CLI::Option* vb = c_verify->add_option("--beta", beta,
                                           "Check one opening angle");
    c_verify->add_flag("--degrees", degrees, "Interpret angles in degrees");
    CLI::Option* vq = c_verify->add_option("--quad", quad_path,
                                           "Check one quadrilateral");
    vb->excludes(vq);
    c_verify->add_option("--seed", seed, "Random seed for sampled shapes");
    c_verify->add_option("--samples", samples, "Flux samples per segment");

    CLI::App* c_est = app.add_subcommand("estimate",
                                         "Discretized Rayleigh quotient on a "
                                         "quadrilateral");
    // free the short -h so the mesh-step option can use the plain name
    c_est->set_help_flag("--help", "Print this help message and exit");
    c_est->add_option("--quad", quad_path, "JSON file with vertices")
        ->required();
    c_est->add_option("--h", h, "Mesh step")->required();
    c_est->add_option("--refine", refine, "Extra step halvings");

    CLI::App* c_sec = app.add_subcommand("sector",
                                         "1D eigenvalue oracle for a sector");
    c_sec->add_option("--beta", beta, "Opening angle")->required();
    c_sec->add_flag("--degrees", degrees, "Interpret angles in degrees");
    c_sec->add_option("--n", n_sector, "Interior grid size");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // help/version
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (app.got_subcommand(c_const)) return run_constant(beta, degrees);
        if (app.got_subcommand("critical-angle")) return run_critical_angle();
        if (app.got_subcommand(c_prof))
            return run_profile(beta, degrees, n_profile, format, out_path,
                               svg_path);
        if (app.got_subcommand(c_class)) return run_classify(quad_path, svg_path);
        if (app.got_subcommand(c_verify)) {
            std::optional<double> vbeta;
            if (vb->count() > 0) vbeta = beta;
            return run_verify(vbeta, degrees, quad_path, seed, samples);
        }
        if (app.got_subcommand(c_est)) return run_estimate(quad_path, h, refine);
        if (app.got_subcommand(c_sec)) return run_sector(beta, degrees, n_sector);
        std::cerr << "usage error: no command given\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const MultipleReflex& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
