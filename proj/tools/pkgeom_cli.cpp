// pkgeom: numerical engine and verification CLI for the pseudo-Kähler
// family (g_f, I, ω_f) on H²×ℂ and its integrable system (H1, H2).
//
// Exit codes: 0 pass, 1 check/domain failure, 2 usage error.

#include <CLI11.hpp>
#include <json.hpp>

#include <pkgeom/actions.hpp>
#include <pkgeom/checks.hpp>
#include <pkgeom/curvature.hpp>
#include <pkgeom/fibration.hpp>
#include <pkgeom/geometry.hpp>
#include <pkgeom/hamilton.hpp>
#include <pkgeom/numerics.hpp>
#include <pkgeom/profile.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using json = nlohmann::ordered_json;
using namespace pkgeom;

namespace {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

struct GlobalConfig {
    std::string profile = "linear";
    double k = 1.0;
    std::uint64_t seed = 42;
    std::string out;
    std::string format;  // "", "csv", or "json"

    ProfileFunction make_profile() const {
        if (profile == "linear")
            return ProfileFunction::linear(k);
        if (profile == "quadratic")
            return ProfileFunction::quadratic(k);
        return ProfileFunction::from_table(profile);
    }

    bool user_profile() const { return profile != "linear" && profile != "quadratic"; }
};

// "start:stop:n" → n equally spaced values
std::vector<double> parse_grid(const std::string& spec) {
    double start = 0, stop = 0;
    int n = 0;
    char c1 = 0, c2 = 0;
    std::istringstream in(spec);
    if (!(in >> start >> c1 >> stop >> c2 >> n) || c1 != ':' || c2 != ':' || n < 1)
        throw CLI::ValidationError("grid", "expected start:stop:n, got '" + spec + "'");
    std::vector<double> g;
    g.reserve(n);
    for (int i = 0; i < n; ++i)
        g.push_back(n == 1 ? start : start + (stop - start) * i / (n - 1));
    return g;
}

std::vector<double> parse_csv_doubles(const std::string& spec, std::size_t want) {
    std::vector<double> out;
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ','))
        out.push_back(std::stod(item));
    if (out.size() != want)
        throw CLI::ValidationError("list", "expected " + std::to_string(want) + " values");
    return out;
}

void emit(const GlobalConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open output file " + cfg.out);
    f << text;
}

json invariant_to_json(const checks::InvariantResult& r) {
    return json{{"invariant", r.name},
                {"max_residual", r.max_residual},
                {"tolerance", r.tolerance},
                {"pass", r.pass},
                {"worst_point", r.worst_point}};
}

int cmd_check(const GlobalConfig& cfg, int samples) {
    checks::CheckConfig ccfg;
    ccfg.seed = cfg.seed;
    ccfg.samples = samples;
    if (cfg.user_profile())
        ccfg.user_profile = cfg.make_profile();
    const auto results = checks::run_all(ccfg);

    bool all_pass = true;
    if (cfg.format == "csv") {
        std::string text = "invariant,max_residual,tolerance,pass\n";
        for (const auto& r : results) {
            text += r.name + "," + g17(r.max_residual) + "," + g17(r.tolerance) + "," +
                    (r.pass ? "1" : "0") + "\n";
            all_pass = all_pass && r.pass;
        }
        emit(cfg, text);
    } else {
        json rep = json::array();
        for (const auto& r : results) {
            rep.push_back(invariant_to_json(r));
            all_pass = all_pass && r.pass;
        }
        emit(cfg, rep.dump(2) + "\n");
    }
    return all_pass ? 0 : 1;
}

int cmd_flow(const GlobalConfig& cfg, const std::string& which, double time, int steps,
             const std::string& start) {
    const ProfileFunction prof = cfg.make_profile();
    const auto s0 = parse_csv_doubles(start, 4);
    AmbientPoint p(s0[0], s0[1], s0[2], s0[3]);

    const auto tag = (which == "h1") ? hamilton::HamiltonianTag::hamiltonian_h1()
                                     : hamilton::HamiltonianTag::hamiltonian_h2();
    const hamilton::VectorField field = [&](const AmbientPoint& q) {
        return hamilton::field_closed_form(q, tag);
    };

    std::string text = "t,x,y,u,v,H1,H2\n";
    const auto row = [&](double t, const AmbientPoint& q) {
        text += g17(t) + "," + g17(q.x) + "," + g17(q.y) + "," + g17(q.u) + "," + g17(q.v) +
                "," + g17(hamilton::h1(q, prof)) + "," + g17(hamilton::h2(q, prof)) + "\n";
    };
    row(0.0, p);
    const double h = time / steps;
    for (int i = 1; i <= steps; ++i) {
        p = hamilton::integrate(p, field, h, 1).endpoint;
        row(i * h, p);
    }
    emit(cfg, text);
    return 0;
}

int cmd_curvature(const GlobalConfig& cfg, const std::string& ugrid, double step) {
    const ProfileFunction prof = cfg.make_profile();
    std::string text = "u,scal_closed,scal_numeric,ricci_zz,ricci_ww,ricci_zw_imag\n";
    for (double u : parse_grid(ugrid)) {
        const auto ric = curvature::ricci_closed(u, prof);
        const double closed = curvature::scalar_closed(u, prof);
        const double numeric = curvature::scalar_numeric_full({0, 1, u, 0}, prof, step);
        text += g17(u) + "," + g17(closed) + "," + g17(numeric) + "," + g17(ric.zz) + "," +
                g17(ric.ww) + "," + g17(ric.zw.imag()) + "\n";
    }
    emit(cfg, text);
    return 0;
}

int cmd_scan_bound(const GlobalConfig& cfg, double k, const std::string& ugrid,
                   const std::string& ygrid, const std::string& xgrid) {
    const auto ug = parse_grid(ugrid);
    const auto yg = parse_grid(ygrid);
    const auto xg = parse_grid(xgrid);
    const auto rep = curvature::bound_scan(k, ug, yg, xg);
    json out{{"k", k},
             {"points", rep.points},
             {"max_scal", rep.max_scal},
             {"argmax_u_norm", rep.argmax_u_norm},
             {"argmax_point",
              {rep.argmax_point.x, rep.argmax_point.y, rep.argmax_point.u, rep.argmax_point.v}},
             {"zero_section_value", rep.zero_section_value},
             {"pass", rep.pass}};
    emit(cfg, out.dump(2) + "\n");
    return rep.pass ? 0 : 1;
}

int cmd_darboux(const GlobalConfig& cfg, const std::string& b1range, const std::string& b2range,
                double b1_ref) {
    const ProfileFunction prof = cfg.make_profile();
    const auto b1g = parse_grid(b1range);
    const auto b2g = parse_grid(b2range);
    const fibration::SectionHandle naive{fibration::SectionKind::Naive, b1_ref, 1e-9};
    const fibration::SectionHandle lagr{fibration::SectionKind::Lagrangianized, b1_ref, 1e-9};

    Mat4 canonical = Mat4::Zero();
    canonical(0, 1) = 1.0;
    canonical(1, 0) = -1.0;
    canonical(2, 3) = 1.0;
    canonical(3, 2) = -1.0;

    double max_naive = 0.0, max_lagr = 0.0, max_darboux = 0.0;
    for (double b1 : b1g)
        for (double b2 : b2g) {
            const fibration::BasePoint b(b1, b2);
            max_naive = std::max(max_naive, std::abs(fibration::section_defect(naive, b, prof)));
            max_lagr = std::max(max_lagr, std::abs(fibration::section_defect(lagr, b, prof)));
            const AmbientPoint p = fibration::section_point(lagr, b, prof);
            const Mat4 m = fibration::darboux_matrix(p, lagr, prof);
            max_darboux = std::max(max_darboux, (m - canonical).cwiseAbs().maxCoeff());
        }

    const bool pass = max_lagr <= 1e-5 && max_darboux <= 1e-4;
    json out{{"grid",
              {{"b1", {b1g.front(), b1g.back(), b1g.size()}},
               {"b2", {b2g.front(), b2g.back(), b2g.size()}},
               {"b1_ref", b1_ref}}},
             {"max_naive_defect", max_naive},
             {"max_lagr_defect", max_lagr},
             {"max_darboux_residual", max_darboux},
             {"pass", pass}};
    emit(cfg, out.dump(2) + "\n");
    return pass ? 0 : 1;
}

int cmd_isometry(const GlobalConfig& cfg, bool recover, const std::string& moebius, double theta,
                 bool flip1, bool flip2, int samples) {
    const ProfileFunction prof = cfg.make_profile();
    const auto abcd = parse_csv_doubles(moebius, 4);
    const actions::IsometryElement e{actions::MoebiusElement(abcd[0], abcd[1], abcd[2], abcd[3]),
                                     theta, flip1, flip2};

    if (recover) {
        const PointMap map = [&e](const AmbientPoint& p) { return actions::isometry_apply(e, p); };
        const auto rec = actions::recover_parameters(map, prof);
        json out{{"moebius", {rec.A.a(), rec.A.b(), rec.A.c(), rec.A.d()}},
                 {"theta", rec.theta},
                 {"flip1", rec.flip1},
                 {"flip2", rec.flip2}};
        emit(cfg, out.dump(2) + "\n");
        return 0;
    }

    numerics::PointSampler sampler(cfg.seed);
    std::vector<AmbientPoint> pts;
    for (int i = 0; i < samples; ++i)
        pts.push_back(sampler.next());
    const double res = actions::isometry_residual(e, pts, prof);
    emit(cfg, "residual " + g17(res) + "\n");
    return res <= 1e-7 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical engine for the pseudo-Kähler family on H²×ℂ"};
    app.require_subcommand(1);

    GlobalConfig cfg;
    app.add_option("--profile", cfg.profile,
                   "profile: linear, quadratic, or a path to a table file (columns t f f' f'' f''')")
        ->envname("PKGEOM_PROFILE");
    app.add_option("--k", cfg.k, "family parameter k > 0")->envname("PKGEOM_K");
    app.add_option("--seed", cfg.seed, "seed for sample points")->envname("PKGEOM_SEED");
    app.add_option("--out", cfg.out, "output file (default: stdout)")->envname("PKGEOM_OUT");
    app.add_option("--format", cfg.format, "output format: csv or json (where applicable)")
        ->check(CLI::IsMember({"csv", "json"}))
        ->envname("PKGEOM_FORMAT");

    auto* check = app.add_subcommand("check", "run the full invariant suite");
    int samples = 200;
    check->add_option("--samples", samples, "random sample count per invariant");

    auto* flow = app.add_subcommand("flow", "integrate a Hamiltonian flow (RK4), emit CSV");
    std::string which = "h1", start = "0,1,1,0";
    double time = 1.0;
    int steps = 1000;
    flow->add_option("--hamiltonian", which, "h1 or h2")->check(CLI::IsMember({"h1", "h2"}));
    flow->add_option("--time", time, "total flow time");
    flow->add_option("--steps", steps, "number of RK4 steps")->check(CLI::PositiveNumber);
    flow->add_option("--start", start, "start point x,y,u,v");

    auto* curvature_cmd = app.add_subcommand("curvature", "closed vs numeric curvature, CSV");
    std::string ugrid = "0:3:13";
    double step = 1e-2;
    curvature_cmd->add_option("--u-grid", ugrid, "u grid start:stop:n");
    curvature_cmd->add_option("--step", step, "finite-difference step");

    auto* scan = app.add_subcommand("scan-bound", "scan the scalar-invariant bound (< 1)");
    double scan_k = 1.0;
    std::string scan_u = "0.1:5:15", scan_y = "0.5:2:4", scan_x = "-1:1:3";
    scan->add_option("--k", scan_k, "linear-family parameter")->check(CLI::PositiveNumber);
    scan->add_option("--u-grid", scan_u, "u grid start:stop:n");
    scan->add_option("--y-grid", scan_y, "y grid start:stop:n");
    scan->add_option("--x-grid", scan_x, "x grid start:stop:n");

    auto* darboux = app.add_subcommand("darboux", "section defects and Darboux residuals, JSON");
    std::string b1range = "-3:-0.3:10", b2range = "-4:4:10";
    double b1_ref = -1.0;
    darboux->add_option("--b1-range", b1range, "b1 grid start:stop:n (b1 < 0)");
    darboux->add_option("--b2-range", b2range, "b2 grid start:stop:n");
    darboux->add_option("--b1-ref", b1_ref, "quadrature reference b1 (< 0)");

    auto* isometry = app.add_subcommand("isometry", "verify or recover canonical isometries");
    isometry->require_subcommand(1);
    auto* verify = isometry->add_subcommand("verify", "print the metric pullback residual");
    auto* recover = isometry->add_subcommand("recover",
                                             "treat the element as a black box and recover it");
    std::string moebius = "1,0,0,1";
    double theta = 0.0;
    bool flip1 = false, flip2 = false;
    int iso_samples = 50;
    for (auto* sub : {verify, recover}) {
        sub->add_option("--moebius", moebius, "a,b,c,d with ad-bc = 1");
        sub->add_option("--theta", theta, "rotation angle");
        sub->add_flag("--flip1", flip1, "compose with (z,w) -> (-z̄,w)");
        sub->add_flag("--flip2", flip2, "compose with (z,w) -> (z,w̄)");
    }
    verify->add_option("--samples", iso_samples, "sample count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
            return app.exit(e);
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (check->parsed())
            return cmd_check(cfg, samples);
        if (flow->parsed())
            return cmd_flow(cfg, which, time, steps, start);
        if (curvature_cmd->parsed())
            return cmd_curvature(cfg, ugrid, step);
        if (scan->parsed())
            return cmd_scan_bound(cfg, scan_k, scan_u, scan_y, scan_x);
        if (darboux->parsed())
            return cmd_darboux(cfg, b1range, b2range, b1_ref);
        if (isometry->parsed())
            return cmd_isometry(cfg, recover->parsed(), moebius, theta, flip1, flip2,
                                iso_samples);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
