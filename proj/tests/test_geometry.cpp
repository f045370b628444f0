#include <doctest.h>

#include <pkgeom/curvature.hpp>
#include <pkgeom/geometry.hpp>
#include <pkgeom/numerics.hpp>

#include <cmath>

using namespace pkgeom;
namespace geo = pkgeom::geometry;

namespace {
const ProfileFunction kLinear1 = ProfileFunction::linear(1.0);
const ProfileFunction kLinear2 = ProfileFunction::linear(2.0);
const ProfileFunction kQuadratic1 = ProfileFunction::quadratic(1.0);
}  // namespace

TEST_CASE("metric at the reference points") {
    // (i, 0): diag(1, 1, -4/3, -4/3)
    const Mat4 g0 = geo::metric({0, 1, 0, 0}, kLinear1).m;
    Mat4 want = Mat4::Zero();
    want.diagonal() << 1.0, 1.0, -4.0 / 3.0, -4.0 / 3.0;
    CHECK((g0 - want).cwiseAbs().maxCoeff() < 1e-15);

    // (i, u=1, v=0): hand substitution with f = f' = -1
    const Mat4 g1 = geo::metric({0, 1, 1, 0}, kLinear1).m;
    CHECK(g1(0, 0) == doctest::Approx(-1.0));   // 1 - f + 3f'u² = 2 - 3
    CHECK(g1(1, 1) == doctest::Approx(-1.0));
    CHECK(g1(2, 2) == doctest::Approx(-4.0 / 3.0));
    CHECK(g1(0, 2) == doctest::Approx(0.0));    // 2f'v
    CHECK(g1(0, 3) == doctest::Approx(2.0));    // -2f'u
    CHECK(g1(1, 2) == doctest::Approx(-2.0));   // 2f'u
    CHECK(g1(1, 3) == doctest::Approx(0.0));    // 2f'v

    CHECK_THROWS_AS(geo::metric({0, -1, 0, 0}, kLinear1), std::domain_error);
}

TEST_CASE("metric is symmetric at random points") {
    numerics::PointSampler sampler(7);
    for (int i = 0; i < 100; ++i) {
        const AmbientPoint p = sampler.next();
        const Mat4 g = geo::metric(p, kQuadratic1).m;
        CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("symplectic form at the reference points") {
    const Mat4 w0 = geo::symplectic_form({0, 1, 0, 0}, kLinear1).m;
    CHECK(w0(0, 1) == doctest::Approx(-1.0));
    CHECK(w0(2, 3) == doctest::Approx(4.0 / 3.0));
    CHECK(w0(0, 2) == 0.0);
    CHECK(w0(0, 3) == 0.0);
    CHECK(w0(1, 2) == 0.0);
    CHECK(w0(1, 3) == 0.0);

    // (i, u=1, v=0), f = f' = -1: ω(∂x,∂y) = -1 + f - 3f't = +1 and the
    // compatibility identity forces ω(∂x,∂y) = -g(∂x,∂x) = +1 as well.
    const Mat4 w1 = geo::symplectic_form({0, 1, 1, 0}, kLinear1).m;
    CHECK(w1(0, 1) == doctest::Approx(1.0));
    CHECK(w1(2, 3) == doctest::Approx(4.0 / 3.0));
    CHECK(w1(0, 2) == doctest::Approx(2.0));  // -2y²f'u
    CHECK(w1(1, 3) == doctest::Approx(2.0));
    const Mat4 g1 = geo::metric({0, 1, 1, 0}, kLinear1).m;
    CHECK(w1(0, 1) == doctest::Approx(-g1(0, 0)));
}

TEST_CASE("symplectic form is antisymmetric at random points") {
    numerics::PointSampler sampler(8);
    for (int i = 0; i < 100; ++i) {
        const AmbientPoint p = sampler.next();
        const Mat4 w = geo::symplectic_form(p, kLinear2).m;
        CHECK((w + w.transpose()).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("complex structure") {
    const Mat4 I = geo::complex_structure().m;
    CHECK((I * I + Mat4::Identity()).cwiseAbs().maxCoeff() == 0.0);

    Mat4 display;
    display << 0, -1, 0, 0,
               1, 0, 0, 0,
               0, 0, 0, -1,
               0, 0, 1, 0;
    CHECK((I - display).cwiseAbs().maxCoeff() == 0.0);

    const Vec4 ix = I * Vec4(1, 0, 0, 0);
    CHECK((ix - Vec4(0, 1, 0, 0)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("compatibility residuals") {
    const auto r0 = geo::compatibility_residuals({0, 1, 0, 0}, kLinear1);
    CHECK(r0.max() <= 1e-12);

    const auto r1 = geo::compatibility_residuals({1, 2, 0.3, -0.7}, kLinear2);
    CHECK(r1.max() <= 1e-10);

    numerics::PointSampler sampler(9);
    for (int i = 0; i < 100; ++i) {
        const AmbientPoint p = sampler.next();
        for (const auto* prof : {&kLinear1, &kQuadratic1}) {
            CHECK(geo::metric_signature(p, *prof) == std::pair<int, int>(2, 2));
        }
    }
}

TEST_CASE("d omega residual") {
    CHECK(geo::d_omega_residual({0, 1, 0, 0}, kLinear1, 1e-5) <= 1e-8);
    CHECK(geo::d_omega_residual({2, 1, 1, 1}, kQuadratic1, 1e-5) <= 1e-7);

    numerics::PointSampler sampler(10);
    for (int i = 0; i < 40; ++i) {
        const AmbientPoint p = sampler.next();
        CHECK(geo::d_omega_residual_richardson(p, kLinear1, 1e-4) <= 1e-6);
        CHECK(geo::d_omega_residual_richardson(p, kQuadratic1, 1e-4) <= 1e-6);
    }
}

TEST_CASE("d omega detects a broken fiber term") {
    // ω_uv with y² instead of y³ is no longer closed.
    const auto broken = [&](const AmbientPoint& p) {
        Mat4 w = geo::symplectic_form(p, kLinear1).m;
        const double df = kLinear1.eval(p.fiber_norm_sq()).df;
        w(2, 3) = -(4.0 / 3.0) * df * p.y * p.y;
        w(3, 2) = -w(2, 3);
        return w;
    };
    // central-difference dω of the broken field at (i + offset, w = (1,1))
    const AmbientPoint p(0.3, 1.4, 1.0, 1.0);
    const Vec4 c = p.coords();
    Mat4 dw[4];
    for (int a = 0; a < 4; ++a) {
        const double h = numerics::fd_step(c[a]);
        Vec4 cp = c, cm = c;
        cp[a] += h;
        cm[a] -= h;
        dw[a] = (broken(AmbientPoint::from_coords(cp)) - broken(AmbientPoint::from_coords(cm))) /
                (2.0 * h);
    }
    constexpr int triple[4][3] = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    double residual = 0.0;
    for (auto [a, b, cc] : triple)
        residual = std::max(residual, std::abs(dw[a](b, cc) - dw[b](a, cc) + dw[cc](a, b)));
    CHECK(residual > 1e-2);
}

TEST_CASE("pullback") {
    const PointMap identity = [](const AmbientPoint& p) { return p; };
    const auto omega = [&](const AmbientPoint& q) {
        return geo::symplectic_form(q, kLinear1).m;
    };
    const AmbientPoint p(0, 1, 1, 0);
    CHECK((geo::pullback(identity, p, omega) - omega(p)).cwiseAbs().maxCoeff() <= 1e-10);

    // quarter turn of the fiber preserves ω_f
    const PointMap quarter = [](const AmbientPoint& q) {
        return AmbientPoint{q.x, q.y, -q.v, q.u};
    };
    CHECK((geo::pullback(quarter, p, omega) - omega(p)).cwiseAbs().maxCoeff() <= 1e-8);

    // (z,w) ↦ (2z,w) is not symplectic
    const PointMap stretch = [](const AmbientPoint& q) {
        return AmbientPoint{2.0 * q.x, 2.0 * q.y, q.u, q.v};
    };
    CHECK((geo::pullback(stretch, p, omega) - omega(p)).cwiseAbs().maxCoeff() > 1e-3);
}

TEST_CASE("zero-section restriction is hyperbolic") {
    for (double y : {0.5, 1.0, 2.0}) {
        const Mat4 g = geo::metric({0.7, y, 0, 0}, kQuadratic1).m;
        CHECK(g(0, 0) == doctest::Approx(1.0 / (y * y)).epsilon(1e-14));
        CHECK(g(1, 1) == doctest::Approx(1.0 / (y * y)).epsilon(1e-14));
        CHECK(g(0, 1) == 0.0);
        CHECK(g(0, 2) == 0.0);
    }
}

TEST_CASE("determinant closed form") {
    numerics::PointSampler sampler(11);
    for (int i = 0; i < 50; ++i) {
        const AmbientPoint p = sampler.next();
        for (const auto* prof : {&kLinear1, &kQuadratic1}) {
            const double det = geo::metric(p, *prof).m.determinant();
            const double want = curvature::det_metric(p, *prof);
            CHECK(det == doctest::Approx(want).epsilon(1e-8));
        }
    }
}
