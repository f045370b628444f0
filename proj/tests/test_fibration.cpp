#include <doctest.h>

#include <pkgeom/fibration.hpp>
#include <pkgeom/hamilton.hpp>
#include <pkgeom/numerics.hpp>

#include <cmath>
#include <numbers>

using namespace pkgeom;
namespace fib = pkgeom::fibration;

namespace {
const ProfileFunction kLinear1 = ProfileFunction::linear(1.0);
const ProfileFunction kQuadratic1 = ProfileFunction::quadratic(1.0);
const fib::SectionHandle kNaive{fib::SectionKind::Naive, -1.0, 1e-9};
const fib::SectionHandle kLagrangian{};
}  // namespace

TEST_CASE("projection") {
    const auto b1 = fib::project({0, 1, 1, 0}, kLinear1);
    CHECK(b1.b1 == doctest::Approx(-2.0 / 3.0));
    CHECK(b1.b2 == doctest::Approx(0.0));

    const auto b2 = fib::project({1, 1, 1, 0}, kLinear1);
    CHECK(b2.b1 == doctest::Approx(-2.0 / 3.0));
    CHECK(b2.b2 == doctest::Approx(4.0));

    CHECK_THROWS_AS(fib::project({0, 1, 0, 0}, kLinear1), std::domain_error);
    CHECK_THROWS_AS(fib::BasePoint(0.5, 0.0), std::domain_error);
}

TEST_CASE("naive section values and round trip") {
    const AmbientPoint s1 = fib::naive_section({-2.0 / 3.0, 0.0}, kLinear1);
    CHECK(s1.x == doctest::Approx(0.0));
    CHECK(s1.y == 1.0);
    CHECK(s1.u == doctest::Approx(1.0));
    CHECK(s1.v == 0.0);

    const AmbientPoint s2 = fib::naive_section({-2.0 / 3.0, 4.0}, kLinear1);
    CHECK(s2.x == doctest::Approx(1.0));

    const AmbientPoint s3 = fib::naive_section({-2.0, 0.0}, kLinear1);
    CHECK(s3.u == doctest::Approx(std::sqrt(3.0)));

    for (const auto* prof : {&kLinear1, &kQuadratic1})
        for (double b1 = -5.0; b1 <= -0.1 + 1e-9; b1 += 0.35)
            for (double b2 = -5.0; b2 <= 5.0 + 1e-9; b2 += 2.5) {
                const auto back = fib::project(fib::naive_section({b1, b2}, *prof), *prof);
                CHECK(std::abs(back.b1 - b1) <= 1e-10 * (1.0 + std::abs(b1)));
                CHECK(std::abs(back.b2 - b2) <= 1e-10 * (1.0 + std::abs(b2)));
            }
}

TEST_CASE("naive section defect against the closed form") {
    // (σ0*ω)(∂b1,∂b2) = 3/(4(1 - (3/2)b1)) for the linear profile at b2 = 0
    CHECK(fib::section_defect(kNaive, {-2.0 / 3.0, 0.0}, kLinear1) ==
          doctest::Approx(0.375).epsilon(1e-5));
    CHECK(fib::section_defect(kNaive, {-2.0, 0.0}, kLinear1) ==
          doctest::Approx(0.1875).epsilon(1e-5));

    for (double b1 = -3.0; b1 <= -0.3 + 1e-9; b1 += 0.27) {
        const double want = 3.0 / (4.0 * (1.0 - 1.5 * b1));
        CHECK(std::abs(fib::section_defect(kNaive, {b1, 0.0}, kLinear1) - want) < 1e-5);
    }
}

TEST_CASE("lagrangian shift") {
    // empty integral at the reference line
    CHECK(fib::lagrangian_shift({-2.0, 3.3}, kLinear1, -2.0) == 0.0);

    // analytic antiderivative: -∫_{-2}^{-2/3} 3/(4(1-1.5τ)) dτ = -(1/2)ln 2
    const double a2 = fib::lagrangian_shift({-2.0 / 3.0, 0.0}, kLinear1, -2.0);
    CHECK(a2 == doctest::Approx(-0.5 * std::log(2.0)).epsilon(1e-8));
}

TEST_CASE("lagrangianized section kills the defect") {
    for (const auto* prof : {&kLinear1, &kQuadratic1})
        for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
                const double b1 = -3.0 + 2.7 * i / 9.0;
                const double b2 = -4.0 + 8.0 * j / 9.0;
                CHECK(std::abs(fib::section_defect(kLagrangian, {b1, b2}, *prof)) <= 1e-5);
            }
}

TEST_CASE("chart and its inverse") {
    const fib::BasePoint b(-2.0 / 3.0, 0.0);
    const AmbientPoint sb = fib::section_point(kLagrangian, b, kLinear1);

    const auto c0 = fib::chart(sb, kLagrangian, kLinear1);
    CHECK(c0.theta == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(c0.s == doctest::Approx(0.0).epsilon(1e-12));

    const auto c1 = fib::chart(hamilton::flow_h1(sb, std::numbers::pi / 3.0), kLagrangian,
                               kLinear1);
    CHECK(c1.theta == doctest::Approx(std::numbers::pi / 3.0).epsilon(1e-10));
    CHECK(c1.s == doctest::Approx(0.0).epsilon(1e-10));

    const AmbientPoint moved = hamilton::flow_h2(hamilton::flow_h1(sb, 1.0), 0.7);
    const auto c2 = fib::chart(moved, kLagrangian, kLinear1);
    CHECK(c2.theta == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(c2.s == doctest::Approx(0.7).epsilon(1e-9));

    // chart_inverse at the section
    const AmbientPoint q = fib::chart_inverse({0.0, -2.0 / 3.0, 0.0, 0.0}, kLagrangian,
                                              kLinear1);
    CHECK((q.coords() - sb.coords()).cwiseAbs().maxCoeff() < 1e-10);

    // round trips
    numerics::PointSampler sampler(51);
    for (int i = 0; i < 40; ++i) {
        AmbientPoint p = sampler.next();
        if (std::abs(p.u) < 1e-3 && std::abs(p.v) < 1e-3)
            p.u = 0.6;
        for (const auto* prof : {&kLinear1, &kQuadratic1}) {
            const auto c = fib::chart(p, kLagrangian, *prof);
            const AmbientPoint back = fib::chart_inverse(c, kLagrangian, *prof);
            CHECK((back.coords() - p.coords()).cwiseAbs().maxCoeff() < 1e-8);
            // conserved coordinates reproduce the stored actions
            CHECK(std::abs(hamilton::h1(back, *prof) - c.h1) < 1e-9);
            CHECK(std::abs(hamilton::h2(back, *prof) - c.h2) < 1e-9);
        }
    }
}

TEST_CASE("chart coordinates move linearly under the flows") {
    const AmbientPoint p(0.4, 1.2, 0.8, -0.3);
    const auto c = fib::chart(p, kLagrangian, kLinear1);

    const auto c_rot = fib::chart(hamilton::flow_h1(p, 0.9), kLagrangian, kLinear1);
    const double dtheta = std::remainder(c_rot.theta - c.theta - 0.9, 2.0 * std::numbers::pi);
    CHECK(std::abs(dtheta) < 1e-10);
    CHECK(c_rot.s == doctest::Approx(c.s).epsilon(1e-10));

    const auto c_scale = fib::chart(hamilton::flow_h2(p, 0.35), kLagrangian, kLinear1);
    CHECK(c_scale.s == doctest::Approx(c.s + 0.35).epsilon(1e-10));
    CHECK(c_scale.theta == doctest::Approx(c.theta).epsilon(1e-10));
}

TEST_CASE("darboux matrix is canonical for the lagrangianized section") {
    Mat4 canonical = Mat4::Zero();
    canonical(0, 1) = 1.0;
    canonical(1, 0) = -1.0;
    canonical(2, 3) = 1.0;
    canonical(3, 2) = -1.0;

    const Mat4 m0 = fib::darboux_matrix({0, 1, 1, 0}, kLagrangian, kLinear1);
    CHECK((m0 - canonical).cwiseAbs().maxCoeff() < 1e-4);

    numerics::PointSampler sampler(52);
    for (int i = 0; i < 12; ++i) {
        AmbientPoint p = sampler.next();
        if (std::abs(p.u) < 1e-3 && std::abs(p.v) < 1e-3)
            p.u = 0.5;
        for (const auto* prof : {&kLinear1, &kQuadratic1}) {
            const Mat4 m = fib::darboux_matrix(p, kLagrangian, *prof);
            CHECK((m - canonical).cwiseAbs().maxCoeff() < 1e-4);
        }
    }
}

TEST_CASE("naive section is not darboux: action-action pairing survives") {
    // at σ0(b) the (H1,H2) entry equals the section defect (0.375 at b1=-2/3)
    const AmbientPoint p = fib::naive_section({-2.0 / 3.0, 0.0}, kLinear1);
    const Mat4 m = fib::darboux_matrix(p, kNaive, kLinear1);
    CHECK(std::abs(m(1, 3)) >= 1e-2);
    CHECK(m(1, 3) == doctest::Approx(0.375).epsilon(1e-3));
}

TEST_CASE("period lattice generator") {
    const auto per = fib::period_generator({-2.0 / 3.0, 0.0}, kLinear1);
    CHECK(per.per1 == doctest::Approx(2.0 * std::numbers::pi));
    CHECK(per.per2 == 0.0);
    CHECK(per.return_distance <= 1e-12);
    CHECK(per.min_scan_distance > 1e-3);

    numerics::PointSampler sampler(53);
    for (int i = 0; i < 20; ++i) {
        const fib::BasePoint b(sampler.uniform(-4.0, -0.2), sampler.uniform(-3.0, 3.0));
        for (const auto* prof : {&kLinear1, &kQuadratic1}) {
            const auto pg = fib::period_generator(b, *prof);
            CHECK(pg.return_distance <= 1e-12);
            CHECK(pg.min_scan_distance > 1e-3);  // rank of the lattice is 1
        }
    }
}
