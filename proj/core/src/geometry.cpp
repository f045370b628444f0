#include <pkgeom/geometry.hpp>

#include <pkgeom/numerics.hpp>

#include <Eigen/Eigenvalues>
#include <cmath>

namespace pkgeom::geometry {

FrameMatrix metric(const AmbientPoint& p, const ProfileFunction& profile) {
    const double y = p.y, u = p.u, v = p.v;
    const double r2 = u * u + v * v;
    const double y2 = y * y, y3 = y2 * y;
    const ProfileValues pf = profile.eval(y3 * r2);
    const double f = pf.f, df = pf.df;

    const double lam = (1.0 - f + 3.0 * r2 * y3 * df) / y2;
    const double fiber = (4.0 / 3.0) * df * y3;
    const double cu = 2.0 * df * u * y2;
    const double cv = 2.0 * df * v * y2;

    FrameMatrix g;
    g.kind = FrameKind::Metric;
    g.m << lam, 0.0, cv, -cu,
           0.0, lam, cu, cv,
           cv,  cu,  fiber, 0.0,
           -cu, cv,  0.0, fiber;
    return g;
}

FrameMatrix symplectic_form(const AmbientPoint& p, const ProfileFunction& profile) {
    const double y = p.y, u = p.u, v = p.v;
    const double y2 = y * y, y3 = y2 * y;
    const double t = y3 * (u * u + v * v);
    const ProfileValues pf = profile.eval(t);
    const double f = pf.f, df = pf.df;

    FrameMatrix w;
    w.kind = FrameKind::Symplectic;
    auto set = [&](int a, int b, double val) {
        w.m(a, b) = val;
        w.m(b, a) = -val;
    };
    set(0, 1, (-1.0 + f - 3.0 * df * t) / y2);
    set(2, 3, -(4.0 / 3.0) * df * y3);
    set(0, 2, -2.0 * y2 * df * u);
    set(1, 3, -2.0 * y2 * df * u);
    set(2, 1, -2.0 * y2 * df * v);
    set(3, 0, 2.0 * y2 * df * v);
    return w;
}

FrameMatrix complex_structure() {
    FrameMatrix i;
    i.kind = FrameKind::ComplexStructure;
    i.m << 0, -1, 0, 0,
           1,  0, 0, 0,
           0,  0, 0, -1,
           0,  0, 1, 0;
    return i;
}

double CompatibilityResiduals::max() const {
    return std::max({complex_structure_sq, hermitian, fundamental_form,
                     static_cast<double>(signature_defect)});
}

std::pair<int, int> metric_signature(const AmbientPoint& p, const ProfileFunction& profile) {
    const Mat4 g = metric(p, profile).m;
    Eigen::SelfAdjointEigenSolver<Mat4> es(g);
    int pos = 0, neg = 0;
    for (int i = 0; i < 4; ++i) {
        if (es.eigenvalues()[i] > 0)
            ++pos;
        else if (es.eigenvalues()[i] < 0)
            ++neg;
    }
    return {pos, neg};
}

CompatibilityResiduals compatibility_residuals(const AmbientPoint& p,
                                               const ProfileFunction& profile) {
    const Mat4 g = metric(p, profile).m;
    const Mat4 w = symplectic_form(p, profile).m;
    const Mat4 I = complex_structure().m;

    CompatibilityResiduals r;
    r.complex_structure_sq = (I * I + Mat4::Identity()).cwiseAbs().maxCoeff();
    r.hermitian = (I.transpose() * g * I - g).cwiseAbs().maxCoeff();
    r.fundamental_form = (w - g * I).cwiseAbs().maxCoeff();
    const auto [pos, neg] = metric_signature(p, profile);
    r.signature_defect = std::abs(pos - 2) + std::abs(neg - 2);
    return r;
}

std::array<double, 4> d_omega_components(const AmbientPoint& p, const ProfileFunction& profile,
                                         double step) {
    // ∂_a ω_bc by central differences, per-coordinate scaled steps.
    const Vec4 c = p.coords();
    Mat4 dw[4];
    for (int a = 0; a < 4; ++a) {
        const double h = step * std::max(1.0, std::abs(c[a]));
        Vec4 cp = c, cm = c;
        cp[a] += h;
        cm[a] -= h;
        dw[a] = (symplectic_form(AmbientPoint::from_coords(cp), profile).m -
                 symplectic_form(AmbientPoint::from_coords(cm), profile).m) /
                (2.0 * h);
    }
    constexpr int triple[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    std::array<double, 4> out{};
    for (int i = 0; i < 4; ++i) {
        const int a = triple[i][0], b = triple[i][1], cc = triple[i][2];
        out[i] = dw[a](b, cc) - dw[b](a, cc) + dw[cc](a, b);
    }
    return out;
}

double d_omega_residual(const AmbientPoint& p, const ProfileFunction& profile, double step) {
    const auto comp = d_omega_components(p, profile, step);
    double m = 0.0;
    for (double x : comp)
        m = std::max(m, std::abs(x));
    return m;
}

double d_omega_residual_richardson(const AmbientPoint& p, const ProfileFunction& profile,
                                   double step) {
    const auto ch = d_omega_components(p, profile, step);
    const auto ch2 = d_omega_components(p, profile, 0.5 * step);
    double m = 0.0;
    for (int i = 0; i < 4; ++i)
        m = std::max(m, std::abs((4.0 * ch2[i] - ch[i]) / 3.0));
    return m;
}

Mat4 pullback(const PointMap& map, const AmbientPoint& p, const FormField& form) {
    const Mat4 jac = numerics::map_jacobian(map, p);
    return jac.transpose() * form(map(p)) * jac;
}

}  // namespace pkgeom::geometry
