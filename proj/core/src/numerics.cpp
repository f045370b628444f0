#include <pkgeom/numerics.hpp>

#include <cmath>
#include <stdexcept>

namespace pkgeom::numerics {

namespace {

double simpson(double fa, double fm, double fb, double h) {
    return (fa + 4.0 * fm + fb) * (h / 6.0);
}

double simpson_recurse(const std::function<double(double)>& f, double a, double m, double b,
                       double fa, double fm, double fb, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    const double err = left + right - whole;
    if (std::abs(err) <= 15.0 * tol)
        return left + right + err / 15.0;
    if (depth <= 0)
        throw std::runtime_error("adaptive_simpson: recursion limit reached");
    return simpson_recurse(f, a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    if (a == b)
        return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = simpson(fa, fm, fb, b - a);
    return simpson_recurse(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

Mat4 map_jacobian(const PointMap& map, const AmbientPoint& p, double h) {
    Mat4 jac;
    const Vec4 c = p.coords();
    for (int a = 0; a < 4; ++a) {
        const double step = fd_step(c[a], h);
        Vec4 cp = c, cm = c;
        cp[a] += step;
        cm[a] -= step;
        const Vec4 fp = map(AmbientPoint::from_coords(cp)).coords();
        const Vec4 fm = map(AmbientPoint::from_coords(cm)).coords();
        // dividing by the realized coordinate difference keeps linear maps
        // exact (the identity in particular)
        jac.col(a) = (fp - fm) / (cp[a] - cm[a]);
    }
    return jac;
}

AmbientPoint PointSampler::next() {
    const double x = uniform(-1.5, 1.5);
    const double y = uniform(0.4, 2.0);
    const double u = uniform(-1.2, 1.2);
    const double v = uniform(-1.2, 1.2);
    return {x, y, u, v};
}

double PointSampler::uniform(double lo, double hi) {
    std::uniform_real_distribution<double> dist(lo, hi);
    return dist(rng_);
}

}  // namespace pkgeom::numerics
