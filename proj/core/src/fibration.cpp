#include <pkgeom/fibration.hpp>

#include <pkgeom/geometry.hpp>
#include <pkgeom/hamilton.hpp>
#include <pkgeom/numerics.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace pkgeom::fibration {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FD step for pushforwards along the base / chart directions; coarser than
// the first-derivative rule so quadrature noise in the section stays below
// the truncation term.
double frame_step(double coord) {
    return 1e-4 * std::max(1.0, std::abs(coord));
}
}  // namespace

BasePoint project(const AmbientPoint& p, const ProfileFunction& profile) {
    if (p.u == 0.0 && p.v == 0.0)
        throw std::domain_error("project: point lies on the zero section (w = 0)");
    return {hamilton::h1(p, profile), hamilton::h2(p, profile)};
}

AmbientPoint naive_section(const BasePoint& b, const ProfileFunction& profile) {
    const double t_star = profile.inverse(1.5 * b.b1);
    const double x = b.b2 / (2.0 * (1.0 - 1.5 * b.b1));
    return {x, 1.0, std::sqrt(t_star), 0.0};
}

namespace {

double naive_defect(const BasePoint& b, const ProfileFunction& profile) {
    const double h1s = frame_step(b.b1);
    const double h2s = frame_step(b.b2);
    const Vec4 e1 = (naive_section({b.b1 + h1s, b.b2}, profile).coords() -
                     naive_section({b.b1 - h1s, b.b2}, profile).coords()) /
                    (2.0 * h1s);
    const Vec4 e2 = (naive_section({b.b1, b.b2 + h2s}, profile).coords() -
                     naive_section({b.b1, b.b2 - h2s}, profile).coords()) /
                    (2.0 * h2s);
    const Mat4 omega = geometry::symplectic_form(naive_section(b, profile), profile).m;
    return e1.dot(omega * e2);
}

}  // namespace

double lagrangian_shift(const BasePoint& b, const ProfileFunction& profile, double b1_ref,
                        double quad_tol) {
    if (!(b1_ref < 0.0))
        throw std::domain_error("lagrangian_shift: b1_ref must be negative");
    return -numerics::adaptive_simpson(
        [&](double tau) { return naive_defect({tau, b.b2}, profile); }, b1_ref, b.b1, quad_tol);
}

AmbientPoint lagrangianize(const BasePoint& b, const ProfileFunction& profile, double b1_ref,
                           double quad_tol) {
    const double a2 = lagrangian_shift(b, profile, b1_ref, quad_tol);
    return hamilton::flow_h2(naive_section(b, profile), a2);
}

AmbientPoint section_point(const SectionHandle& sec, const BasePoint& b,
                           const ProfileFunction& profile) {
    if (sec.kind == SectionKind::Naive)
        return naive_section(b, profile);
    return lagrangianize(b, profile, sec.b1_ref, sec.quad_tol);
}

double section_defect(const SectionHandle& sec, const BasePoint& b,
                      const ProfileFunction& profile) {
    const double h1s = frame_step(b.b1);
    const double h2s = frame_step(b.b2);
    const Vec4 e1 = (section_point(sec, {b.b1 + h1s, b.b2}, profile).coords() -
                     section_point(sec, {b.b1 - h1s, b.b2}, profile).coords()) /
                    (2.0 * h1s);
    const Vec4 e2 = (section_point(sec, {b.b1, b.b2 + h2s}, profile).coords() -
                     section_point(sec, {b.b1, b.b2 - h2s}, profile).coords()) /
                    (2.0 * h2s);
    const Mat4 omega = geometry::symplectic_form(section_point(sec, b, profile), profile).m;
    return e1.dot(omega * e2);
}

ActionAngleCoords chart(const AmbientPoint& p, const SectionHandle& sec,
                        const ProfileFunction& profile) {
    const BasePoint b = project(p, profile);
    const AmbientPoint sb = section_point(sec, b, profile);
    // The h2-flow scales w by a positive real, so the phase offset is pure θ.
    const double s = 0.5 * std::log(p.y / sb.y);
    double theta = std::atan2(p.v, p.u) - std::atan2(sb.v, sb.u);
    theta = std::fmod(theta, kTwoPi);
    if (theta < 0.0)
        theta += kTwoPi;
    return {theta, b.b1, s, b.b2};
}

AmbientPoint chart_inverse(const ActionAngleCoords& c, const SectionHandle& sec,
                           const ProfileFunction& profile) {
    const AmbientPoint sb = section_point(sec, {c.h1, c.h2}, profile);
    return hamilton::flow_h2(hamilton::flow_h1(sb, c.theta), c.s);
}

Mat4 darboux_matrix(const AmbientPoint& p, const SectionHandle& sec,
                    const ProfileFunction& profile) {
    const ActionAngleCoords c0 = chart(p, sec, profile);
    const double base[4] = {c0.theta, c0.h1, c0.s, c0.h2};

    Mat4 frame;  // columns E_θ, E_H1, E_s, E_H2
    for (int a = 0; a < 4; ++a) {
        const double h = frame_step(base[a]);
        double cp[4], cm[4];
        for (int i = 0; i < 4; ++i)
            cp[i] = cm[i] = base[i];
        cp[a] += h;
        cm[a] -= h;
        const Vec4 fp =
            chart_inverse({cp[0], cp[1], cp[2], cp[3]}, sec, profile).coords();
        const Vec4 fm =
            chart_inverse({cm[0], cm[1], cm[2], cm[3]}, sec, profile).coords();
        frame.col(a) = (fp - fm) / (2.0 * h);
    }
    const Mat4 omega = geometry::symplectic_form(p, profile).m;
    return frame.transpose() * omega * frame;
}

PeriodGenerator period_generator(const BasePoint& b, const ProfileFunction& profile) {
    const SectionHandle sec{SectionKind::Naive, -1.0, 1e-9};
    const AmbientPoint sb = section_point(sec, b, profile);

    PeriodGenerator out;
    out.per1 = kTwoPi;
    out.per2 = 0.0;
    out.return_distance =
        (hamilton::flow_h1(sb, kTwoPi).coords() - sb.coords()).cwiseAbs().maxCoeff();

    // log-spaced scan of the h2-flow on s ∈ [1e-3, 10]
    out.min_scan_distance = std::numeric_limits<double>::infinity();
    const int n = 80;
    for (int i = 0; i <= n; ++i) {
        const double s = 1e-3 * std::pow(10.0 / 1e-3, static_cast<double>(i) / n);
        const double dist =
            (hamilton::flow_h2(sb, s).coords() - sb.coords()).cwiseAbs().maxCoeff();
        out.min_scan_distance = std::min(out.min_scan_distance, dist);
    }
    return out;
}

}  // namespace pkgeom::fibration
