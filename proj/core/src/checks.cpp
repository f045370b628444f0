#include <pkgeom/checks.hpp>

#include <pkgeom/actions.hpp>
#include <pkgeom/curvature.hpp>
#include <pkgeom/fibration.hpp>
#include <pkgeom/geometry.hpp>
#include <pkgeom/hamilton.hpp>
#include <pkgeom/numerics.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <span>

namespace pkgeom::checks {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Recorder {
    InvariantResult res;
    Recorder(std::string name, double tol) {
        res.name = std::move(name);
        res.tolerance = tol;
    }
    void update(double residual, const AmbientPoint& p) {
        if (residual > res.max_residual) {
            res.max_residual = residual;
            res.worst_point = {p.x, p.y, p.u, p.v};
        }
    }
    void fail(const std::string& why) {
        res.name += " [" + why + "]";
        res.max_residual = std::numeric_limits<double>::infinity();
    }
};

// Runs one invariant; an exception becomes a named failure instead of
// aborting the suite (user tables have bounded domains).
template <typename Fn>
void run_invariant(std::vector<InvariantResult>& out, std::string name, double tol, Fn&& body) {
    Recorder r(std::move(name), tol);
    try {
        body(r);
    } catch (const std::exception& e) {
        r.fail(e.what());
    }
    r.res.pass = r.res.max_residual <= r.res.tolerance;
    out.push_back(r.res);
}

std::vector<AmbientPoint> sample_points(std::uint64_t seed, int n) {
    numerics::PointSampler sampler(seed);
    std::vector<AmbientPoint> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i)
        pts.push_back(sampler.next());
    return pts;
}

}  // namespace

std::vector<InvariantResult> run_all(const CheckConfig& cfg) {
    std::vector<InvariantResult> out;
    std::vector<ProfileFunction> profiles;
    if (cfg.user_profile) {
        profiles.push_back(*cfg.user_profile);
    } else {
        profiles.push_back(ProfileFunction::linear(1.0));
        profiles.push_back(ProfileFunction::quadratic(1.0));
    }
    const auto pts = sample_points(cfg.seed, cfg.samples);
    const AmbientPoint origin(0.0, 1.0, 0.0, 0.0);

    run_invariant(out, "profile.axioms", 0.0, [&](Recorder& r) {
        for (const auto& prof : profiles) {
            std::vector<double> grid{0.0};
            const double top = std::min(1e4, 0.99 * prof.domain_max());
            for (double t = 1e-2; t <= top; t *= 10.0)
                grid.push_back(t);
            const auto rep = validate(prof, grid);
            if (!rep.pass) {
                r.fail(rep.detail);
                return;
            }
            r.update(0.0, origin);
        }
    });

    // An invalid user profile makes the rest of the suite meaningless.
    if (cfg.user_profile && !out.back().pass)
        return out;

    run_invariant(out, "profile.inverse_roundtrip", 1e-10, [&](Recorder& r) {
        for (const auto& prof : profiles) {
            const double top = std::min(1e6, 0.99 * prof.domain_max());
            for (double t = 1e-6; t <= top; t *= 10.0) {
                const double back = prof.inverse(prof.eval(t).f);
                r.update(std::abs(back - t) / (1.0 + t), origin);
            }
        }
    });

    run_invariant(out, "profile.g_factor_linear_closed_form", 1e-12, [&](Recorder& r) {
        for (double k : {0.5, 1.0, 2.0}) {
            const auto prof = ProfileFunction::linear(k);
            for (double t = 0.0; t <= 64.0; t = (t == 0.0 ? 0.25 : 2.0 * t)) {
                const double want = k * k / ((1.0 + k * t) * (1.0 + k * t));
                r.update(std::abs(prof.g_factor(t) - want), origin);
            }
        }
    });

    run_invariant(out, "geometry.compatibility", 1e-9, [&](Recorder& r) {
        for (const auto& prof : profiles)
            for (const auto& p : pts)
                r.update(geometry::compatibility_residuals(p, prof).max(), p);
    });

    run_invariant(out, "geometry.d_omega", 1e-6, [&](Recorder& r) {
        for (const auto& prof : profiles)
            for (const auto& p : pts)
                r.update(geometry::d_omega_residual_richardson(p, prof, 1e-4), p);
    });

    run_invariant(out, "geometry.hyperbolic_restriction", 1e-12, [&](Recorder& r) {
        numerics::PointSampler sampler(cfg.seed + 1);
        for (const auto& prof : profiles)
            for (int i = 0; i < 32; ++i) {
                const AmbientPoint p(sampler.uniform(-2, 2), sampler.uniform(0.3, 3), 0.0, 0.0);
                const Mat4 g = geometry::metric(p, prof).m;
                const double inv_y2 = 1.0 / (p.y * p.y);
                double res = std::max(std::abs(g(0, 0) - inv_y2), std::abs(g(1, 1) - inv_y2));
                res = std::max(res, std::abs(g(0, 1)));
                r.update(res, p);
            }
    });

    run_invariant(out, "geometry.det_closed_form", 1e-8, [&](Recorder& r) {
        for (const auto& prof : profiles)
            for (const auto& p : pts) {
                const double det = geometry::metric(p, prof).m.determinant();
                const double want = curvature::det_metric(p, prof);
                r.update(std::abs(det - want) / std::abs(want), p);
            }
    });

    run_invariant(out, "hamilton.field_solve_vs_closed", 1e-6, [&](Recorder& r) {
        for (const auto& prof : profiles)
            for (const auto& p : pts)
                for (const auto& tag : {hamilton::HamiltonianTag::hamiltonian_h1(),
                                        hamilton::HamiltonianTag::hamiltonian_h2()}) {
                    const TangentVector solve = hamilton::field_by_solve(p, tag, prof);
                    const TangentVector closed = hamilton::field_closed_form(p, tag);
                    r.update((solve - closed).cwiseAbs().maxCoeff(), p);
                }
    });

    run_invariant(out, "hamilton.poisson_h1_h2", 1e-8, [&](Recorder& r) {
        for (const auto& prof : profiles)
            for (const auto& p : pts)
                r.update(std::abs(hamilton::poisson(p, hamilton::HamiltonianTag::hamiltonian_h1(),
                                                    hamilton::HamiltonianTag::hamiltonian_h2(),
                                                    prof)),
                         p);
    });

    run_invariant(out, "hamilton.conservation", 1e-8, [&](Recorder& r) {
        for (const auto& prof : profiles)
            for (const auto& p : pts)
                for (const auto& ti : {hamilton::HamiltonianTag::hamiltonian_h1(),
                                       hamilton::HamiltonianTag::hamiltonian_h2()})
                    for (const auto& tj : {hamilton::HamiltonianTag::hamiltonian_h1(),
                                           hamilton::HamiltonianTag::hamiltonian_h2()}) {
                        const Vec4 dH = hamilton::gradient(ti, p, prof);
                        const TangentVector X = hamilton::field_closed_form(p, tj);
                        r.update(std::abs(dH.dot(X)), p);
                    }
    });

    run_invariant(out, "hamilton.flow_group_laws", 1e-10, [&](Recorder& r) {
        for (const auto& p : pts) {
            const AmbientPoint full = hamilton::flow_h1(p, kTwoPi);
            r.update((full.coords() - p.coords()).cwiseAbs().maxCoeff(), p);
            const AmbientPoint split = hamilton::flow_h2(hamilton::flow_h2(p, 0.2), 0.1);
            const AmbientPoint joint = hamilton::flow_h2(p, 0.3);
            r.update((split.coords() - joint.coords()).cwiseAbs().maxCoeff(), p);
        }
    });

    run_invariant(out, "actions.fiber_norm_invariance", 1e-10, [&](Recorder& r) {
        numerics::PointSampler sampler(cfg.seed + 2);
        for (const auto& p : pts) {
            Mat2 a;
            const double alpha = sampler.uniform(-0.8, 0.8);
            const double beta = sampler.uniform(-0.8, 0.8);
            const double gamma = sampler.uniform(-0.8, 0.8);
            a << std::exp(alpha), beta, gamma, (1.0 + beta * gamma) * std::exp(-alpha);
            const AmbientPoint q = actions::sl2_apply(actions::MoebiusElement(a), p);
            r.update(std::abs(q.fiber_norm_sq() - p.fiber_norm_sq()) / (1.0 + p.fiber_norm_sq()),
                     p);
        }
    });

    run_invariant(out, "actions.commutation", 1e-10, [&](Recorder& r) {
        const actions::MoebiusElement a(1.1, 0.3, 0.2, (1.0 + 0.3 * 0.2) / 1.1);
        for (const auto& p : pts) {
            const AmbientPoint q1 = actions::sl2_apply(a, actions::circle_apply(0.9, p));
            const AmbientPoint q2 = actions::circle_apply(0.9, actions::sl2_apply(a, p));
            r.update((q1.coords() - q2.coords()).cwiseAbs().maxCoeff(), p);
        }
    });

    run_invariant(out, "actions.pullback_invariance", 1e-7, [&](Recorder& r) {
        const actions::MoebiusElement a(1.2, -0.4, 0.5, (1.0 - 0.4 * 0.5) / 1.2);
        const std::span<const AmbientPoint> sub(pts.data(),
                                                std::min<std::size_t>(pts.size(), 50));
        for (const auto& prof : profiles) {
            const PointMap sl2 = [&](const AmbientPoint& p) { return actions::sl2_apply(a, p); };
            const PointMap rot = [](const AmbientPoint& p) {
                return actions::circle_apply(1.1, p);
            };
            for (const auto& map : {sl2, rot}) {
                r.update(hamilton::symplecto_residual(map, sub, prof), origin);
                const auto g = [&](const AmbientPoint& q) { return geometry::metric(q, prof).m; };
                for (const auto& p : sub)
                    r.update((geometry::pullback(map, p, g) - g(p)).cwiseAbs().maxCoeff(), p);
            }
        }
    });

    run_invariant(out, "actions.moment_equals_h2", 1e-12, [&](Recorder& r) {
        const actions::LieAlgebraElement xi((Mat2() << 1, 0, 0, -1).finished());
        for (const auto& prof : profiles)
            for (const auto& p : pts) {
                const double h2v = hamilton::h2(p, prof);
                r.update(std::abs(actions::moment_map(p, xi, prof) - h2v) /
                             (1.0 + std::abs(h2v)),
                         p);
            }
    });

    run_invariant(out, "actions.moment_residual", 1e-6, [&](Recorder& r) {
        const Mat2 basis[3] = {(Mat2() << 1, 0, 0, -1).finished(),
                               (Mat2() << 0, 1, 0, 0).finished(),
                               (Mat2() << 0, 0, 1, 0).finished()};
        const std::span<const AmbientPoint> sub(pts.data(),
                                                std::min<std::size_t>(pts.size(), 25));
        for (const auto& prof : profiles)
            for (const auto& x : basis)
                for (const auto& p : sub)
                    r.update(actions::moment_residual(p, actions::LieAlgebraElement(x), prof), p);
    });

    run_invariant(out, "actions.recover_roundtrip", 1e-6, [&](Recorder& r) {
        numerics::PointSampler sampler(cfg.seed + 3);
        const auto& prof = profiles.front();
        for (int i = 0; i < 12; ++i) {
            const double alpha = sampler.uniform(-0.6, 0.6);
            const double beta = sampler.uniform(-0.6, 0.6);
            const double gamma = sampler.uniform(-0.6, 0.6);
            Mat2 a;
            a << std::exp(alpha), beta, gamma, (1.0 + beta * gamma) * std::exp(-alpha);
            actions::IsometryElement e{actions::MoebiusElement(a), sampler.uniform(0.0, kTwoPi),
                                       (i % 2) == 1, (i % 4) >= 2};
            const PointMap map = [&e](const AmbientPoint& p) {
                return actions::isometry_apply(e, p);
            };
            const actions::IsometryElement rec = actions::recover_parameters(map, prof);
            double err = std::abs(rec.theta - e.theta);
            err = std::min(err, std::abs(err - kTwoPi));
            err = std::max(err, static_cast<double>(rec.flip1 != e.flip1));
            err = std::max(err, static_cast<double>(rec.flip2 != e.flip2));
            err = std::max(err, std::min((rec.A.m - e.A.m).cwiseAbs().maxCoeff(),
                                         (rec.A.m + e.A.m).cwiseAbs().maxCoeff()));
            r.update(err, origin);
        }
    });

    run_invariant(out, "curvature.logdet_vs_closed", 1e-4, [&](Recorder& r) {
        for (const auto& prof : profiles)
            for (double u = 0.0; u <= 3.0 + 1e-12; u += 0.25) {
                const auto closed = curvature::ricci_closed(u, prof);
                const auto numeric = curvature::ricci_numeric_logdet(u, prof, 1e-3);
                const AmbientPoint p(0, 1, u, 0);
                r.update(std::abs(closed.zz - numeric.zz), p);
                r.update(std::abs(closed.ww - numeric.ww), p);
                r.update(std::abs(closed.zw - numeric.zw), p);
                r.update(std::abs(curvature::scalar_closed(u, prof) -
                                  curvature::scalar_contraction(
                                      curvature::inverse_metric_at_iu(u, prof), numeric)),
                         p);
            }
    });

    run_invariant(out, "curvature.levicivita_vs_closed", 5e-3, [&](Recorder& r) {
        for (const auto& prof : profiles)
            for (double u = 0.0; u <= 3.0 + 1e-12; u += 0.5) {
                const auto closed = curvature::ricci_closed(u, prof);
                const auto numeric = curvature::ricci_numeric_levicivita(u, prof, 1e-2);
                const AmbientPoint p(0, 1, u, 0);
                r.update(std::abs(closed.zz - numeric.zz), p);
                r.update(std::abs(closed.ww - numeric.ww), p);
                r.update(std::abs(closed.zw - numeric.zw), p);
                r.update(std::abs(curvature::scalar_closed(u, prof) -
                                  curvature::scalar_numeric_full(p, prof, 1e-2)),
                         p);
            }
    });

    run_invariant(out, "curvature.scalar_invariance", 5e-3, [&](Recorder& r) {
        const std::span<const AmbientPoint> sub(pts.data(),
                                                std::min<std::size_t>(pts.size(), 20));
        for (const auto& prof : profiles)
            for (const auto& p : sub) {
                const double via_p = curvature::scalar_numeric_full(p, prof, 1e-2);
                const double via_closed =
                    curvature::scalar_closed(actions::normal_form(p).u_norm, prof);
                r.update(std::abs(via_p - via_closed), p);
            }
    });

    if (!cfg.user_profile) {
        run_invariant(out, "curvature.bound_scan", 0.0, [&](Recorder& r) {
            std::vector<double> ug, yg{0.5, 1.0, 2.0}, xg{-1.0, 0.0, 1.0};
            for (double u = 0.1; u <= 5.0; u += 0.35)
                ug.push_back(u);
            for (double k : {0.01, 1.0, 100.0}) {
                const auto rep = curvature::bound_scan(k, ug, yg, xg);
                r.update(rep.pass ? 0.0 : 1.0, rep.argmax_point);
                r.update(std::abs(rep.zero_section_value - 1.0), origin);
            }
        });
    }

    run_invariant(out, "fibration.section_roundtrip", 1e-10, [&](Recorder& r) {
        for (const auto& prof : profiles)
            for (double b1 = -5.0; b1 <= -0.1 + 1e-9; b1 += 0.7)
                for (double b2 = -5.0; b2 <= 5.0 + 1e-9; b2 += 1.25) {
                    const fibration::BasePoint b(b1, b2);
                    const AmbientPoint s = fibration::naive_section(b, prof);
                    const fibration::BasePoint back = fibration::project(s, prof);
                    r.update(std::abs(back.b1 - b1) / (1.0 + std::abs(b1)), s);
                    r.update(std::abs(back.b2 - b2) / (1.0 + std::abs(b2)), s);
                }
    });

    if (!cfg.user_profile) {
        run_invariant(out, "fibration.naive_defect_closed_form", 1e-5, [&](Recorder& r) {
            const auto prof = ProfileFunction::linear(1.0);
            const fibration::SectionHandle naive{fibration::SectionKind::Naive, -1.0, 1e-9};
            for (double b1 = -3.0; b1 <= -0.3 + 1e-9; b1 += 0.3) {
                const double got = fibration::section_defect(naive, {b1, 0.0}, prof);
                const double want = 3.0 / (4.0 * (1.0 - 1.5 * b1));
                r.update(std::abs(got - want), AmbientPoint(0, 1, b1, 0));
            }
        });
    }

    run_invariant(out, "fibration.lagrangian_defect", 1e-5, [&](Recorder& r) {
        const fibration::SectionHandle sec{};
        for (const auto& prof : profiles)
            for (int i = 0; i < 10; ++i)
                for (int j = 0; j < 10; ++j) {
                    const double b1 = -3.0 + 2.7 * i / 9.0;  // [-3, -0.3]
                    const double b2 = -4.0 + 8.0 * j / 9.0;
                    r.update(std::abs(fibration::section_defect(sec, {b1, b2}, prof)),
                             AmbientPoint(0, 1, b1, b2));
                }
    });

    run_invariant(out, "fibration.darboux_canonical", 1e-4, [&](Recorder& r) {
        const fibration::SectionHandle sec{};
        Mat4 canonical = Mat4::Zero();
        canonical(0, 1) = 1.0;
        canonical(1, 0) = -1.0;
        canonical(2, 3) = 1.0;
        canonical(3, 2) = -1.0;
        numerics::PointSampler sampler(cfg.seed + 4);
        for (const auto& prof : profiles)
            for (int i = 0; i < 12; ++i) {
                AmbientPoint p = sampler.next();
                if (std::abs(p.u) < 1e-3 && std::abs(p.v) < 1e-3)
                    p.u = 0.5;
                const Mat4 m = fibration::darboux_matrix(p, sec, prof);
                r.update((m - canonical).cwiseAbs().maxCoeff(), p);
            }
    });

    run_invariant(out, "fibration.chart_roundtrip", 1e-8, [&](Recorder& r) {
        const fibration::SectionHandle sec{};
        numerics::PointSampler sampler(cfg.seed + 5);
        for (const auto& prof : profiles)
            for (int i = 0; i < 25; ++i) {
                AmbientPoint p = sampler.next();
                if (std::abs(p.u) < 1e-3 && std::abs(p.v) < 1e-3)
                    p.u = 0.7;
                const auto c = fibration::chart(p, sec, prof);
                const AmbientPoint back = fibration::chart_inverse(c, sec, prof);
                r.update((back.coords() - p.coords()).cwiseAbs().maxCoeff(), p);
            }
    });

    run_invariant(out, "fibration.period_lattice", 1e-12, [&](Recorder& r) {
        for (const auto& prof : profiles)
            for (double b1 = -2.5; b1 <= -0.5 + 1e-9; b1 += 0.5) {
                const auto per = fibration::period_generator({b1, 0.4}, prof);
                r.update(per.return_distance, AmbientPoint(0, 1, b1, 0.4));
                r.update(per.min_scan_distance < 1e-3 ? 1.0 : 0.0, AmbientPoint(0, 1, b1, 0.4));
            }
    });

    return out;
}

}  // namespace pkgeom::checks
