#include <pkgeom/actions.hpp>

#include <pkgeom/geometry.hpp>
#include <pkgeom/hamilton.hpp>
#include <pkgeom/numerics.hpp>

#include <cmath>
#include <numbers>

namespace pkgeom::actions {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

MoebiusElement::MoebiusElement(const Mat2& a) : m(a) {
    if (std::abs(m.determinant() - 1.0) > 1e-12)
        throw std::domain_error("MoebiusElement: det must be 1, got " +
                                std::to_string(m.determinant()));
}

MoebiusElement::MoebiusElement(double a, double b, double c, double d)
    : MoebiusElement((Mat2() << a, b, c, d).finished()) {}

MoebiusElement MoebiusElement::inverse() const {
    Mat2 inv;
    inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return MoebiusElement(inv);
}

LieAlgebraElement::LieAlgebraElement(const Mat2& x) : m(x) {
    if (std::abs(m.trace()) > 1e-12)
        throw std::domain_error("LieAlgebraElement: matrix must be traceless");
}

AmbientPoint sl2_apply(const MoebiusElement& A, const AmbientPoint& p) {
    const Complex z = p.z(), w = p.w();
    const Complex denom = A.c() * z + A.d();
    const Complex z2 = (A.a() * z + A.b()) / denom;
    const Complex w2 = denom * denom * denom * w;
    return {z2.real(), z2.imag(), w2.real(), w2.imag()};
}

AmbientPoint circle_apply(double theta, const AmbientPoint& p) {
    return hamilton::flow_h1(p, theta);
}

Mat2 j_map(double x, double y) {
    if (!(y > 0.0))
        throw std::domain_error("j_map: y must be positive");
    Mat2 j;
    j << x / y, -(x * x + y * y) / y,
         1.0 / y, -x / y;
    return j;
}

MoebiusElement base_transitive(double x, double y) {
    if (!(y > 0.0))
        throw std::domain_error("base_transitive: y must be positive");
    const double sy = std::sqrt(y);
    return MoebiusElement(sy, x / sy, 0.0, 1.0 / sy);
}

double moment_map(const AmbientPoint& p, const LieAlgebraElement& X,
                  const ProfileFunction& profile) {
    const double f = profile.eval(p.fiber_norm_sq()).f;
    return (1.0 - f) * (j_map(p.x, p.y) * X.m).trace();
}

Mat2 sl2_exp(const LieAlgebraElement& X, double s) {
    // Traceless X: X² = -det(X)·Id, so the exponential closes in span{Id, X}.
    const double d = X.m.determinant();
    double c0, c1;
    if (d > 1e-300) {
        const double mu = std::sqrt(d);
        c0 = std::cos(mu * s);
        c1 = std::sin(mu * s) / mu;
    } else if (d < -1e-300) {
        const double mu = std::sqrt(-d);
        c0 = std::cosh(mu * s);
        c1 = std::sinh(mu * s) / mu;
    } else {
        c0 = 1.0;
        c1 = s;
    }
    return c0 * Mat2::Identity() + c1 * X.m;
}

TangentVector infinitesimal_generator(const AmbientPoint& p, const LieAlgebraElement& X) {
    const double h = 1e-6;
    const AmbientPoint fwd = sl2_apply(MoebiusElement(sl2_exp(X, h)), p);
    const AmbientPoint bwd = sl2_apply(MoebiusElement(sl2_exp(X, -h)), p);
    return (fwd.coords() - bwd.coords()) / (2.0 * h);
}

double moment_residual(const AmbientPoint& p, const LieAlgebraElement& X,
                       const ProfileFunction& profile) {
    const TangentVector gen = infinitesimal_generator(p, X);
    const Mat4 omega = geometry::symplectic_form(p, profile).m;

    Vec4 dmu;
    const Vec4 c = p.coords();
    for (int a = 0; a < 4; ++a) {
        const double h = numerics::fd_step(c[a]);
        Vec4 cp = c, cm = c;
        cp[a] += h;
        cm[a] -= h;
        dmu[a] = (moment_map(AmbientPoint::from_coords(cp), X, profile) -
                  moment_map(AmbientPoint::from_coords(cm), X, profile)) /
                 (2.0 * h);
    }
    // dμ^X(e_a) = ω(V_X, e_a) = (ωᵀ V)_a... ω(V, e_a) = Vᵀ ω e_a
    const Vec4 iota = omega.transpose() * gen;
    return (dmu - iota).cwiseAbs().maxCoeff();
}

NormalForm normal_form(const AmbientPoint& p) {
    NormalForm nf;
    nf.u_norm = std::sqrt(p.fiber_norm_sq());
    double theta = (p.u == 0.0 && p.v == 0.0) ? 0.0 : std::atan2(p.v, p.u);
    if (theta < 0.0)
        theta += kTwoPi;
    nf.elem = IsometryElement{base_transitive(p.x, p.y), theta, false, false};
    return nf;
}

AmbientPoint isometry_apply(const IsometryElement& e, const AmbientPoint& p) {
    AmbientPoint q = p;
    if (e.flip2)
        q = {q.x, q.y, q.u, -q.v};  // (z, w̄)
    if (e.flip1)
        q = {-q.x, q.y, q.u, q.v};  // (-z̄, w)
    q = circle_apply(e.theta, q);
    return sl2_apply(e.A, q);
}

double isometry_residual(const IsometryElement& e, std::span<const AmbientPoint> samples,
                         const ProfileFunction& profile) {
    const PointMap map = [&e](const AmbientPoint& p) { return isometry_apply(e, p); };
    const auto g = [&](const AmbientPoint& q) { return geometry::metric(q, profile).m; };
    double worst = 0.0;
    for (const AmbientPoint& p : samples) {
        const Mat4 pulled = geometry::pullback(map, p, g);
        worst = std::max(worst, (pulled - g(p)).cwiseAbs().maxCoeff());
    }
    return worst;
}

namespace {

IsometryElement normalize_sign(IsometryElement e) {
    // A and -A act identically; pick the representative with positive upper-left
    // entry, or positive upper-right when the first vanishes.
    const double a = e.A.m(0, 0), b = e.A.m(0, 1);
    if (a < -1e-12 || (std::abs(a) <= 1e-12 && b < 0.0))
        e.A.m = -e.A.m;
    return e;
}

double wrap_2pi(double theta) {
    theta = std::fmod(theta, kTwoPi);
    if (theta < 0.0)
        theta += kTwoPi;
    return theta;
}

}  // namespace

IsometryElement recover_parameters(const PointMap& h, const ProfileFunction& profile) {
    const AmbientPoint probe(0.0, 1.0, 1.0, 0.0);  // (i, w = 1)

    // Flips from the orientation of the Jacobian blocks: the base block is a
    // Möbius differential (orientation-preserving) possibly composed with
    // z ↦ -z̄, the fiber block is complex-linear possibly composed with
    // w ↦ w̄.
    const Mat4 jac = numerics::map_jacobian(h, probe);
    const bool flip1 = jac.block<2, 2>(0, 0).determinant() < 0.0;
    const bool flip2 = jac.block<2, 2>(2, 2).determinant() < 0.0;

    // Strip the flips (involutions acting on separate factors).
    const PointMap stripped = [&h, flip1, flip2](const AmbientPoint& p) {
        AmbientPoint q = p;
        if (flip2)
            q = {q.x, q.y, q.u, -q.v};
        if (flip1)
            q = {-q.x, q.y, q.u, q.v};
        return h(q);
    };

    // Base image fixes A up to the stabilizer of i.
    const AmbientPoint image = stripped(probe);
    const MoebiusElement coarse = base_transitive(image.x, image.y);

    // Residual rotation of the stabilizer from the horizontal differential:
    // for K = [[cosφ, sinφ],[-sinφ, cosφ]] the differential at i is e^{2iφ}.
    const MoebiusElement coarse_inv = coarse.inverse();
    const PointMap centered = [&](const AmbientPoint& p) {
        return sl2_apply(coarse_inv, stripped(p));
    };
    const Mat4 jc = numerics::map_jacobian(centered, probe);
    const double phi = 0.5 * std::atan2(jc(1, 0), jc(0, 0));
    Mat2 k;
    k << std::cos(phi), std::sin(phi), -std::sin(phi), std::cos(phi);
    const MoebiusElement A(Mat2(coarse.m * k));

    // Phase of a vertical probe after removing A.
    const AmbientPoint vert = sl2_apply(A.inverse(), stripped(probe));
    const double theta = wrap_2pi(std::atan2(vert.v, vert.u));

    IsometryElement result = normalize_sign({A, theta, flip1, flip2});

    numerics::PointSampler sampler(20240613);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const AmbientPoint p = sampler.next();
        worst = std::max(worst,
                         (isometry_apply(result, p).coords() - h(p).coords())
                             .cwiseAbs()
                             .maxCoeff());
    }
    if (worst > 1e-6)
        throw std::runtime_error(
            "recover_parameters: map is not an isometry of the canonical form "
            "(a-posteriori residual " +
            std::to_string(worst) + ")");
    return result;
}

}  // namespace pkgeom::actions
