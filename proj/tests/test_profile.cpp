#include <doctest.h>

#include <pkgeom/profile.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

using namespace pkgeom;

TEST_CASE("builtin profile evaluation") {
    const auto lin1 = ProfileFunction::linear(1.0);
    const auto lin2 = ProfileFunction::linear(2.0);
    const auto quad = ProfileFunction::quadratic(1.0);

    auto at = [](const ProfileFunction& p, double t) { return p.eval(t); };

    const auto a = at(lin1, 0.0);
    CHECK(a.f == 0.0);
    CHECK(a.df == -1.0);
    CHECK(a.d2f == 0.0);
    CHECK(a.d3f == 0.0);

    const auto b = at(lin2, 3.0);
    CHECK(b.f == -6.0);
    CHECK(b.df == -2.0);

    const auto c = at(quad, 2.0);
    CHECK(c.f == -6.0);   // -t - t²
    CHECK(c.df == -5.0);  // -1 - 2t
    CHECK(c.d2f == -2.0);
    CHECK(c.d3f == 0.0);

    CHECK_THROWS_AS(lin1.eval(-0.1), std::domain_error);
}

TEST_CASE("profile inverse") {
    const auto lin1 = ProfileFunction::linear(1.0);
    const auto lin2 = ProfileFunction::linear(2.0);
    const auto quad = ProfileFunction::quadratic(1.0);

    CHECK(lin1.inverse(-1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(lin2.inverse(-3.0) == doctest::Approx(1.5).epsilon(1e-12));

    // oracle: positive root of t² + t - 6 = 0 by the quadratic formula
    const double root = 0.5 * (-1.0 + std::sqrt(1.0 + 24.0));
    CHECK(quad.inverse(-6.0) == doctest::Approx(root).epsilon(1e-12));
    CHECK(root == doctest::Approx(2.0));

    CHECK_THROWS_AS(lin1.inverse(0.5), std::domain_error);
}

TEST_CASE("inverse is a right inverse of f up to 1e6") {
    for (const auto& prof : {ProfileFunction::linear(1.0), ProfileFunction::quadratic(1.0)}) {
        for (double t = 1e-6; t <= 1e6; t *= 10.0) {
            const double back = prof.inverse(prof.eval(t).f);
            CHECK(std::abs(back - t) / (1.0 + t) < 1e-10);
        }
        CHECK(prof.inverse(0.0) == 0.0);
    }
}

TEST_CASE("g_factor values and linear closed form") {
    const auto lin1 = ProfileFunction::linear(1.0);
    const auto lin2 = ProfileFunction::linear(2.0);

    CHECK(lin1.g_factor(0.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(lin1.g_factor(1.0) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(lin2.g_factor(1.0) == doctest::Approx(4.0 / 9.0).epsilon(1e-14));

    // k²/(1+kt)² exactly, any t
    for (double k : {0.5, 1.0, 3.0}) {
        const auto p = ProfileFunction::linear(k);
        for (double t = 0.0; t < 40.0; t += 1.7) {
            const double want = k * k / ((1.0 + k * t) * (1.0 + k * t));
            CHECK(p.g_factor(t) == doctest::Approx(want).epsilon(1e-13));
        }
    }
}

TEST_CASE("validation accepts the builtins") {
    const auto grid = std::vector<double>{0.0, 1.0, 10.0, 100.0};
    for (const auto& prof : {ProfileFunction::linear(1.0), ProfileFunction::quadratic(1.0)}) {
        const auto rep = validate(prof, grid);
        CHECK(rep.pass);
        CHECK(rep.f0_residual == 0.0);
        CHECK(rep.max_df < 0.0);
    }
}

TEST_CASE("validation rejects increasing f") {
    const auto bad = ProfileFunction::from_callable(
        [](double t) { return ProfileValues{t, 1.0, 0.0, 0.0}; }, "increasing");
    const auto rep = validate(bad, std::vector<double>{0.0, 1.0, 10.0});
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.axioms_ok);
    CHECK(rep.detail.find("f' >= 0") != std::string::npos);
}

TEST_CASE("validation rejects inconsistent derivatives") {
    // f = -t but claimed f'' = 5
    const auto bad = ProfileFunction::from_callable(
        [](double t) { return ProfileValues{-t, -1.0, 5.0, 0.0}; }, "bad second derivative");
    const auto rep = validate(bad, std::vector<double>{0.0, 1.0, 10.0});
    CHECK_FALSE(rep.pass);
    CHECK(rep.axioms_ok);
    CHECK_FALSE(rep.derivatives_ok);
    CHECK(rep.detail.find("derivative mismatch") != std::string::npos);
}

TEST_CASE("table profile reproduces a sampled builtin") {
    // dense table of f = -2t - t² on [0, 9]
    std::vector<double> t, f, df, d2f, d3f;
    for (double x = 0.0; x <= 9.0 + 1e-9; x += 0.25) {
        t.push_back(x);
        f.push_back(-2.0 * x - x * x);
        df.push_back(-2.0 - 2.0 * x);
        d2f.push_back(-2.0);
        d3f.push_back(0.0);
    }
    const auto table = ProfileFunction::from_samples(t, f, df, d2f, d3f);

    for (double x : {0.1, 0.625, 3.33, 8.9}) {
        const auto got = table.eval(x);
        CHECK(got.f == doctest::Approx(-2.0 * x - x * x).epsilon(1e-10));
        CHECK(got.df == doctest::Approx(-2.0 - 2.0 * x).epsilon(1e-10));
        CHECK(got.d2f == doctest::Approx(-2.0).epsilon(1e-10));
    }
    CHECK_THROWS_AS(table.eval(20.0), std::domain_error);
    CHECK(table.inverse(-8.0) == doctest::Approx(2.0).epsilon(1e-9));

    const std::vector<double> grid{0.0, 1.0, 4.0, 8.0};
    CHECK(validate(table, grid).pass);
}

TEST_CASE("table file parsing") {
    const std::string path = "pkgeom_test_profile_table.txt";
    {
        std::ofstream out(path);
        out << "# t f df d2f d3f\n";
        for (double x = 0.0; x <= 4.0 + 1e-9; x += 0.125)
            out << x << " " << -x << " " << -1.0 << " " << 0.0 << " " << 0.0 << "\n";
    }
    const auto table = ProfileFunction::from_table(path);
    CHECK(table.eval(1.5).f == doctest::Approx(-1.5).epsilon(1e-12));
    CHECK(validate(table, std::vector<double>{0.0, 1.0, 3.5}).pass);
    std::remove(path.c_str());
}
