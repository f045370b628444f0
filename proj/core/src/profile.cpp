#include <pkgeom/profile.hpp>

#include <pkgeom/numerics.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>

namespace pkgeom {

namespace {

// Cubic Hermite evaluation on one interval, value and derivative.
struct HermitePiece {
    double value(double x0, double x1, double y0, double y1, double m0, double m1,
                 double x) const {
        const double h = x1 - x0;
        const double s = (x - x0) / h;
        const double s2 = s * s, s3 = s2 * s;
        return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * h * m0 +
               (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * h * m1;
    }
};

int find_interval(const std::vector<double>& t, double x) {
    auto it = std::upper_bound(t.begin(), t.end(), x);
    int i = static_cast<int>(it - t.begin()) - 1;
    return std::clamp(i, 0, static_cast<int>(t.size()) - 2);
}

// Fritsch-Carlson monotone slopes for a column without a supplied derivative.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    std::vector<double> d(n, 0.0), delta(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        delta[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    if (n == 2) {
        d[0] = d[1] = delta[0];
        return d;
    }
    d[0] = delta[0];
    d[n - 1] = delta[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            d[i] = 0.0;
        } else {
            const double w1 = 2.0 * (x[i + 1] - x[i]) + (x[i] - x[i - 1]);
            const double w2 = (x[i + 1] - x[i]) + 2.0 * (x[i] - x[i - 1]);
            d[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    return d;
}

struct Table {
    std::vector<double> t, f, df, d2f, d3f;
    std::vector<double> d3f_slopes;

    ProfileValues eval(double x) const {
        if (x < t.front() - 1e-12 || x > t.back() + 1e-12)
            throw std::domain_error("profile table: t out of range [" + std::to_string(t.front()) +
                                    ", " + std::to_string(t.back()) + "]");
        x = std::clamp(x, t.front(), t.back());
        const int i = find_interval(t, x);
        const HermitePiece h;
        ProfileValues out;
        // Each column interpolated with the next column as its slope; the
        // last column uses monotone slopes.
        out.f = h.value(t[i], t[i + 1], f[i], f[i + 1], df[i], df[i + 1], x);
        out.df = h.value(t[i], t[i + 1], df[i], df[i + 1], d2f[i], d2f[i + 1], x);
        out.d2f = h.value(t[i], t[i + 1], d2f[i], d2f[i + 1], d3f[i], d3f[i + 1], x);
        out.d3f = h.value(t[i], t[i + 1], d3f[i], d3f[i + 1], d3f_slopes[i], d3f_slopes[i + 1], x);
        return out;
    }
};

}  // namespace

ProfileFunction ProfileFunction::linear(double k) {
    if (!(k > 0.0))
        throw std::domain_error("linear profile: k must be positive");
    ProfileFunction p;
    p.family_ = ProfileFamily::Linear;
    p.k_ = k;
    p.name_ = "linear(k=" + std::to_string(k) + ")";
    p.fn_ = [k](double t) { return ProfileValues{-k * t, -k, 0.0, 0.0}; };
    return p;
}

ProfileFunction ProfileFunction::quadratic(double k) {
    if (!(k > 0.0))
        throw std::domain_error("quadratic profile: k must be positive");
    ProfileFunction p;
    p.family_ = ProfileFamily::Quadratic;
    p.k_ = k;
    p.name_ = "quadratic(k=" + std::to_string(k) + ")";
    p.fn_ = [k](double t) { return ProfileValues{-k * t - t * t, -k - 2.0 * t, -2.0, 0.0}; };
    return p;
}

ProfileFunction ProfileFunction::from_samples(std::vector<double> t, std::vector<double> f,
                                              std::vector<double> df, std::vector<double> d2f,
                                              std::vector<double> d3f) {
    const std::size_t n = t.size();
    if (n < 2 || f.size() != n || df.size() != n || d2f.size() != n || d3f.size() != n)
        throw std::invalid_argument("profile table: need >= 2 rows of equal length");
    if (!std::is_sorted(t.begin(), t.end()))
        throw std::invalid_argument("profile table: t column must be increasing");
    auto table = std::make_shared<Table>();
    table->t = std::move(t);
    table->f = std::move(f);
    table->df = std::move(df);
    table->d2f = std::move(d2f);
    table->d3f = std::move(d3f);
    table->d3f_slopes = pchip_slopes(table->t, table->d3f);
    ProfileFunction p;
    p.family_ = ProfileFamily::User;
    p.name_ = "table";
    p.t_max_hint_ = table->t.back();
    p.fn_ = [table](double x) { return table->eval(x); };
    return p;
}

ProfileFunction ProfileFunction::from_table(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("profile table: cannot open " + path);
    std::vector<double> col[5];
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ls(line);
        double vals[5];
        if (ls >> vals[0] >> vals[1] >> vals[2] >> vals[3] >> vals[4])
            for (int i = 0; i < 5; ++i)
                col[i].push_back(vals[i]);
    }
    auto p = from_samples(col[0], col[1], col[2], col[3], col[4]);
    p.name_ = "table(" + path + ")";
    return p;
}

ProfileFunction ProfileFunction::from_callable(std::function<ProfileValues(double)> fn,
                                               std::string name) {
    ProfileFunction p;
    p.family_ = ProfileFamily::User;
    p.name_ = std::move(name);
    p.fn_ = std::move(fn);
    p.t_max_hint_ = 1e12;
    return p;
}

ProfileValues ProfileFunction::eval(double t) const {
    if (t < 0.0)
        throw std::domain_error("profile: t must be nonnegative, got " + std::to_string(t));
    return fn_(t);
}

double ProfileFunction::inverse(double s) const {
    if (s > 0.0)
        throw std::domain_error("profile inverse: s must be nonpositive, got " + std::to_string(s));
    if (s == 0.0)
        return 0.0;
    // f is strictly decreasing: bracket [0, hi] with f(hi) <= s.
    double hi = 1.0;
    int doublings = 0;
    while (eval(std::min(hi, t_max_hint_)).f > s) {
        hi *= 2.0;
        if (++doublings > 200 || hi > 2.0 * t_max_hint_)
            throw std::runtime_error("profile inverse: no bracket found for s=" +
                                     std::to_string(s));
    }
    hi = std::min(hi, t_max_hint_);
    double lo = 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + hi); ++i) {
        const double mid = 0.5 * (lo + hi);
        (eval(mid).f > s ? lo : hi) = mid;
    }
    // Newton polish.
    double t = 0.5 * (lo + hi);
    const double tol = 1e-12 * (1.0 + std::abs(s));
    for (int i = 0; i < 8; ++i) {
        const ProfileValues pv = eval(t);
        const double r = pv.f - s;
        if (std::abs(r) <= tol)
            break;
        const double step = r / pv.df;
        t = std::clamp(t - step, lo, hi);
    }
    return t;
}

double ProfileFunction::g_factor(double t) const {
    const ProfileValues p = eval(t);
    const double om = 1.0 - p.f;
    return (p.d2f * om + p.df * p.df) / (om * om) -
           (p.d3f * p.f - p.d2f * p.d2f) / (p.df * p.df);
}

std::vector<double> default_validation_grid() {
    std::vector<double> g{0.0};
    for (double t = 1e-2; t <= 1e4 * (1 + 1e-12); t *= 10.0)
        g.push_back(t);
    return g;
}

ProfileValidationReport validate(const ProfileFunction& profile, std::span<const double> grid) {
    if (grid.empty())
        throw std::invalid_argument("validate: empty grid");
    ProfileValidationReport rep;
    rep.max_df = -std::numeric_limits<double>::infinity();

    std::vector<double> sorted(grid.begin(), grid.end());
    std::sort(sorted.begin(), sorted.end());

    rep.f0_residual = std::abs(profile.eval(0.0).f);
    rep.tail_value = profile.eval(sorted.back()).f;

    auto rel = [](double got, double want) {
        return std::abs(got - want) / (1.0 + std::abs(want));
    };

    double prev_f = std::numeric_limits<double>::infinity();
    bool decreasing = true;
    for (double t : sorted) {
        const ProfileValues p = profile.eval(t);
        rep.max_df = std::max(rep.max_df, p.df);
        if (p.f >= prev_f + 1e-14)
            decreasing = false;
        prev_f = p.f;

        // Central differences of f/f'/f'' against the supplied derivatives.
        const double h = numerics::fd_step(t, 1e-5);
        if (t - h < 0.0)
            continue;  // one-sided ends skipped; interior carries the check
        const ProfileValues pp = profile.eval(t + h);
        const ProfileValues pm = profile.eval(t - h);
        rep.max_rel_mismatch_df =
            std::max(rep.max_rel_mismatch_df, rel((pp.f - pm.f) / (2 * h), p.df));
        rep.max_rel_mismatch_d2f =
            std::max(rep.max_rel_mismatch_d2f, rel((pp.df - pm.df) / (2 * h), p.d2f));
        rep.max_rel_mismatch_d3f =
            std::max(rep.max_rel_mismatch_d3f, rel((pp.d2f - pm.d2f) / (2 * h), p.d3f));
    }

    rep.axioms_ok = rep.f0_residual <= 1e-10 && rep.max_df < 0.0 && decreasing;
    rep.derivatives_ok = rep.max_rel_mismatch_df <= 1e-6 && rep.max_rel_mismatch_d2f <= 1e-6 &&
                         rep.max_rel_mismatch_d3f <= 1e-6;
    rep.pass = rep.axioms_ok && rep.derivatives_ok;
    if (rep.f0_residual > 1e-10)
        rep.detail = "axiom (i) violated: f(0) != 0";
    else if (rep.max_df >= 0.0)
        rep.detail = "axiom (ii) violated: f' >= 0 on the grid";
    else if (!decreasing)
        rep.detail = "axiom (iii) suspect: f not decreasing along the grid";
    else if (!rep.derivatives_ok)
        rep.detail = "derivative mismatch: supplied derivatives disagree with finite differences";
    return rep;
}

}  // namespace pkgeom
