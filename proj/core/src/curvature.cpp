#include <pkgeom/curvature.hpp>

#include <pkgeom/actions.hpp>
#include <pkgeom/geometry.hpp>

#include <cmath>
#include <vector>

namespace pkgeom::curvature {

double det_metric(const AmbientPoint& p, const ProfileFunction& profile) {
    const ProfileValues pf = profile.eval(p.fiber_norm_sq());
    const double om = 1.0 - pf.f;
    return (16.0 / 9.0) * p.y * p.y * pf.df * pf.df * om * om;
}

InverseMetricComponents inverse_metric_at_iu(double u, const ProfileFunction& profile) {
    const ProfileValues pf = profile.eval(u * u);
    const double om = 1.0 - pf.f;
    InverseMetricComponents gi;
    gi.zz = 1.0 / (2.0 * om);
    gi.ww = 3.0 * (om + 3.0 * pf.df * u * u) / (8.0 * pf.df * om);
    gi.zw = Complex(0.0, 3.0 * u / (4.0 * om));
    return gi;
}

InverseMetricComponents inverse_metric_complexified(const AmbientPoint& p,
                                                    const ProfileFunction& profile) {
    const Mat4 g = geometry::metric(p, profile).m;
    Mat2c m;
    m(0, 0) = Complex(g(0, 0) + g(1, 1), g(0, 1) - g(1, 0));
    m(0, 1) = Complex(g(0, 2) + g(1, 3), g(0, 3) - g(1, 2));
    m(1, 0) = Complex(g(2, 0) + g(3, 1), g(2, 1) - g(3, 0));
    m(1, 1) = Complex(g(2, 2) + g(3, 3), g(2, 3) - g(3, 2));
    const Mat2c gi = m.inverse();
    return {gi(0, 0).real(), gi(1, 1).real(), gi(0, 1)};
}

RicciComponents ricci_closed(double u, const ProfileFunction& profile) {
    const double t = u * u;
    const ProfileValues pf = profile.eval(t);
    const double om = 1.0 - pf.f;
    const double gfac = profile.g_factor(t);
    const double mix = pf.df / om - pf.d2f / pf.df;  // f'/(1-f) - f''/f'

    RicciComponents r;
    r.zz = 0.5 + 3.0 * u * u * mix + 4.5 * u * u * u * u * gfac;
    r.ww = 2.0 * mix + 2.0 * u * u * gfac;
    r.zw = Complex(0.0, -3.0 * u * mix - 3.0 * u * u * u * gfac);
    return r;
}

double scalar_closed(double u, const ProfileFunction& profile) {
    const double t = u * u;
    const ProfileValues pf = profile.eval(t);
    const double om = 1.0 - pf.f;
    const double gfac = profile.g_factor(t);
    const double mix = pf.df / om - pf.d2f / pf.df;
    return 1.0 / om - 0.75 * pf.d2f / (pf.df * pf.df) +
           1.5 * (u * u / om) *
               (6.0 * u * u * gfac + 5.5 * mix + gfac * om / (2.0 * pf.df));
}

double scalar_contraction(const InverseMetricComponents& gi, const RicciComponents& r) {
    return gi.zz * r.zz + gi.ww * r.ww + 2.0 * (gi.zw * r.zw).real();
}

namespace {

// Second partials of log det(g_f) around (i,u,0) at one step size.
struct LogDetHessian {
    double xx_plus_yy, uu_plus_vv, xu, yv, xv, yu;
};

LogDetHessian logdet_hessian(double u, const ProfileFunction& profile, double h) {
    const Vec4 c0(0.0, 1.0, u, 0.0);
    const auto F = [&](double dx, double dy, double du, double dv) {
        return std::log(det_metric(AmbientPoint(c0[0] + dx, c0[1] + dy, c0[2] + du, c0[3] + dv),
                                   profile));
    };
    const double f0 = F(0, 0, 0, 0);
    const auto pure = [&](int axis) {
        double d[4] = {0, 0, 0, 0};
        d[axis] = h;
        return (F(d[0], d[1], d[2], d[3]) - 2.0 * f0 + F(-d[0], -d[1], -d[2], -d[3])) / (h * h);
    };
    const auto mixed = [&](int a, int b) {
        double dp[4] = {0, 0, 0, 0};
        dp[a] = h;
        dp[b] = h;
        double dm[4] = {0, 0, 0, 0};
        dm[a] = h;
        dm[b] = -h;
        return (F(dp[0], dp[1], dp[2], dp[3]) - F(dm[0], dm[1], dm[2], dm[3]) -
                F(-dm[0], -dm[1], -dm[2], -dm[3]) + F(-dp[0], -dp[1], -dp[2], -dp[3])) /
               (4.0 * h * h);
    };
    LogDetHessian out;
    out.xx_plus_yy = pure(0) + pure(1);
    out.uu_plus_vv = pure(2) + pure(3);
    out.xu = mixed(0, 2);
    out.yv = mixed(1, 3);
    out.xv = mixed(0, 3);
    out.yu = mixed(1, 2);
    return out;
}

}  // namespace

RicciComponents ricci_numeric_logdet(double u, const ProfileFunction& profile, double step) {
    if (!(step > 0.0 && step <= 1e-2))
        throw std::domain_error("ricci_numeric_logdet: step must lie in (0, 1e-2]");
    const LogDetHessian h1 = logdet_hessian(u, profile, step);
    const LogDetHessian h2 = logdet_hessian(u, profile, 0.5 * step);
    const auto rich = [](double coarse, double fine) { return (4.0 * fine - coarse) / 3.0; };

    // R_ij̄ = -∂²/∂z_i∂z̄_j log det(g); ∂z∂z̄ = (∂xx+∂yy)/4,
    // ∂z∂w̄ = [(∂xu+∂yv) + i(∂xv-∂yu)]/4.
    RicciComponents r;
    r.zz = -0.25 * rich(h1.xx_plus_yy, h2.xx_plus_yy);
    r.ww = -0.25 * rich(h1.uu_plus_vv, h2.uu_plus_vv);
    r.zw = Complex(-0.25 * (rich(h1.xu, h2.xu) + rich(h1.yv, h2.yv)),
                   -0.25 * (rich(h1.xv, h2.xv) - rich(h1.yu, h2.yu)));
    return r;
}

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd ricci_real_single_step(const MetricField& g, const VectorXd& at, double step) {
    const int n = static_cast<int>(at.size());
    std::vector<double> h(n);
    for (int k = 0; k < n; ++k)
        h[k] = step * std::max(1.0, std::abs(at[k]));

    const MatrixXd g0 = g(at);
    const MatrixXd ginv0 = g0.inverse();

    const auto shifted = [&](int k, double sk, int l, double sl) {
        VectorXd x = at;
        x[k] += sk * h[k];
        if (l >= 0)
            x[l] += sl * h[l];
        return g(x);
    };

    std::vector<MatrixXd> dg(n), dginv(n);
    for (int k = 0; k < n; ++k) {
        dg[k] = (shifted(k, 1, -1, 0) - shifted(k, -1, -1, 0)) / (2.0 * h[k]);
        dginv[k] = -ginv0 * dg[k] * ginv0;
    }
    std::vector<std::vector<MatrixXd>> d2g(n, std::vector<MatrixXd>(n));
    for (int k = 0; k < n; ++k) {
        d2g[k][k] = (shifted(k, 1, -1, 0) - 2.0 * g0 + shifted(k, -1, -1, 0)) / (h[k] * h[k]);
        for (int l = k + 1; l < n; ++l) {
            d2g[k][l] = (shifted(k, 1, l, 1) - shifted(k, 1, l, -1) - shifted(k, -1, l, 1) +
                         shifted(k, -1, l, -1)) /
                        (4.0 * h[k] * h[l]);
            d2g[l][k] = d2g[k][l];
        }
    }

    // Γ^i_{jk} and ∂_m Γ^i_{jk}
    const auto gamma_lower = [&](int l, int j, int k) {
        return 0.5 * (dg[j](l, k) + dg[k](l, j) - dg[l](j, k));
    };
    const auto dgamma_lower = [&](int m, int l, int j, int k) {
        return 0.5 * (d2g[m][j](l, k) + d2g[m][k](l, j) - d2g[m][l](j, k));
    };

    std::vector<MatrixXd> gam(n, MatrixXd(n, n));  // gam[i](j,k) = Γ^i_{jk}
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += ginv0(i, l) * gamma_lower(l, j, k);
                gam[i](j, k) = s;
            }

    const auto dgamma = [&](int m, int i, int j, int k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
            s += dginv[m](i, l) * gamma_lower(l, j, k) + ginv0(i, l) * dgamma_lower(m, l, j, k);
        return s;
    };

    // R^i_{jkl} = ∂_k Γ^i_{lj} - ∂_l Γ^i_{kj} + Γ^i_{km}Γ^m_{lj} - Γ^i_{lm}Γ^m_{kj}
    MatrixXd ric = MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) {
                double r = dgamma(i, i, l, j) - dgamma(l, i, i, j);
                for (int m = 0; m < n; ++m)
                    r += gam[i](i, m) * gam[m](l, j) - gam[i](l, m) * gam[m](i, j);
                s += r;
            }
            ric(j, l) = s;
        }
    return ric;
}

}  // namespace

MatrixXd ricci_real(const MetricField& g, const VectorXd& at, double step) {
    const MatrixXd coarse = ricci_real_single_step(g, at, step);
    const MatrixXd fine = ricci_real_single_step(g, at, 0.5 * step);
    return (4.0 * fine - coarse) / 3.0;
}

double scalar_real(const MetricField& g, const VectorXd& at, double step) {
    const MatrixXd ric = ricci_real(g, at, step);
    const MatrixXd ginv = g(at).inverse();
    return (ginv * ric).trace();
}

namespace {

MetricField ambient_metric_field(const ProfileFunction& profile) {
    return [&profile](const VectorXd& c) -> MatrixXd {
        return geometry::metric(AmbientPoint(c[0], c[1], c[2], c[3]), profile).m;
    };
}

}  // namespace

Mat4 ricci_real_ambient(const AmbientPoint& p, const ProfileFunction& profile, double step) {
    return ricci_real(ambient_metric_field(profile), p.coords(), step);
}

double scalar_real_ambient(const AmbientPoint& p, const ProfileFunction& profile, double step) {
    return scalar_real(ambient_metric_field(profile), p.coords(), step);
}

namespace {

RicciComponents complexify(const Mat4& ric) {
    RicciComponents r;
    r.zz = 0.5 * (ric(0, 0) + ric(1, 1));
    r.ww = 0.5 * (ric(2, 2) + ric(3, 3));
    r.zw = Complex(0.5 * (ric(0, 2) + ric(1, 3)), 0.5 * (ric(0, 3) - ric(1, 2)));
    return r;
}

}  // namespace

RicciComponents ricci_numeric_levicivita(double u, const ProfileFunction& profile, double step) {
    return complexify(ricci_real_ambient(AmbientPoint(0.0, 1.0, u, 0.0), profile, step));
}

double scalar_numeric_full(const AmbientPoint& p, const ProfileFunction& profile, double step) {
    if (!(p.y > 2.0 * step))
        throw std::domain_error("scalar_numeric_full: need y > 2*step");
    const actions::NormalForm nf = actions::normal_form(p);
    const AmbientPoint pn(0.0, 1.0, nf.u_norm, 0.0);
    const RicciComponents r = complexify(ricci_real_ambient(pn, profile, step));
    return scalar_contraction(inverse_metric_complexified(pn, profile), r);
}

BoundScanReport bound_scan(double k, std::span<const double> u_grid,
                           std::span<const double> y_grid, std::span<const double> x_grid) {
    if (!(k > 0.0))
        throw std::domain_error("bound_scan: k must be positive");
    if (u_grid.empty() || y_grid.empty() || x_grid.empty())
        throw std::invalid_argument("bound_scan: empty grid");
    const ProfileFunction profile = ProfileFunction::linear(k);

    BoundScanReport rep;
    rep.zero_section_value = scalar_closed(0.0, profile);
    rep.max_scal = -std::numeric_limits<double>::infinity();
    for (double x : x_grid)
        for (double y : y_grid)
            for (double u : u_grid) {
                if (u == 0.0)
                    continue;
                const AmbientPoint p(x, y, u, 0.0);
                const double u_norm = actions::normal_form(p).u_norm;
                const double s = scalar_closed(u_norm, profile);
                ++rep.points;
                if (s > rep.max_scal) {
                    rep.max_scal = s;
                    rep.argmax_u_norm = u_norm;
                    rep.argmax_point = p;
                }
            }
    rep.pass = rep.max_scal < 1.0;
    return rep;
}

}  // namespace pkgeom::curvature
