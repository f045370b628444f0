#include <pkgeom/hamilton.hpp>

#include <pkgeom/numerics.hpp>

#include <cmath>

namespace pkgeom::hamilton {

double h1(const AmbientPoint& p, const ProfileFunction& profile) {
    return (2.0 / 3.0) * profile.eval(p.fiber_norm_sq()).f;
}

double h2(const AmbientPoint& p, const ProfileFunction& profile) {
    return 2.0 * (p.x / p.y) * (1.0 - profile.eval(p.fiber_norm_sq()).f);
}

HamiltonianTag HamiltonianTag::user(ScalarField f) {
    HamiltonianTag tag(Kind::User);
    tag.fn_ = std::move(f);
    return tag;
}

double HamiltonianTag::value(const AmbientPoint& p, const ProfileFunction& profile) const {
    switch (kind_) {
        case Kind::H1: return h1(p, profile);
        case Kind::H2: return h2(p, profile);
        case Kind::User: return fn_(p);
    }
    return 0.0;
}

TangentVector field_closed_form(const AmbientPoint& p, const HamiltonianTag& which) {
    switch (which.kind()) {
        case HamiltonianTag::Kind::H1:
            return TangentVector(0.0, 0.0, -p.v, p.u);
        case HamiltonianTag::Kind::H2:
            return TangentVector(2.0 * p.x, 2.0 * p.y, -3.0 * p.u, -3.0 * p.v);
        case HamiltonianTag::Kind::User:
            break;
    }
    throw std::invalid_argument("field_closed_form: no closed form for user Hamiltonians");
}

Vec4 gradient(const HamiltonianTag& H, const AmbientPoint& p, const ProfileFunction& profile) {
    Vec4 grad;
    const Vec4 c = p.coords();
    for (int a = 0; a < 4; ++a) {
        const double h = numerics::fd_step(c[a]);
        Vec4 cp = c, cm = c;
        cp[a] += h;
        cm[a] -= h;
        grad[a] = (H.value(AmbientPoint::from_coords(cp), profile) -
                   H.value(AmbientPoint::from_coords(cm), profile)) /
                  (2.0 * h);
    }
    return grad;
}

TangentVector field_by_solve(const AmbientPoint& p, const HamiltonianTag& H,
                             const ProfileFunction& profile) {
    const Mat4 omega = geometry::symplectic_form(p, profile).m;
    const Vec4 dH = gradient(H, p, profile);
    // ω(X, e_a) = (ωᵀX)_a = dH_a
    const Mat4 wT = omega.transpose();
    const TangentVector X = wT.partialPivLu().solve(dH);
    const double scale = std::max(1.0, dH.cwiseAbs().maxCoeff());
    if ((wT * X - dH).cwiseAbs().maxCoeff() > 1e-9 * scale)
        throw std::runtime_error("field_by_solve: singular symplectic solve at (" +
                                 std::to_string(p.x) + "," + std::to_string(p.y) + "," +
                                 std::to_string(p.u) + "," + std::to_string(p.v) + ")");
    return X;
}

double poisson(const AmbientPoint& p, const HamiltonianTag& F, const HamiltonianTag& G,
               const ProfileFunction& profile) {
    const Mat4 omega = geometry::symplectic_form(p, profile).m;
    const TangentVector xf = field_by_solve(p, F, profile);
    const TangentVector xg = field_by_solve(p, G, profile);
    return xf.dot(omega * xg);
}

AmbientPoint flow_h1(const AmbientPoint& p, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    return {p.x, p.y, c * p.u - s * p.v, s * p.u + c * p.v};
}

AmbientPoint flow_h2(const AmbientPoint& p, double s) {
    const double base = std::exp(2.0 * s), fiber = std::exp(-3.0 * s);
    return {base * p.x, base * p.y, fiber * p.u, fiber * p.v};
}

namespace {

Vec4 rk4_step(const VectorField& field, const Vec4& c, double h) {
    const Vec4 k1 = field(AmbientPoint::from_coords(c));
    const Vec4 k2 = field(AmbientPoint::from_coords(c + 0.5 * h * k1));
    const Vec4 k3 = field(AmbientPoint::from_coords(c + 0.5 * h * k2));
    const Vec4 k4 = field(AmbientPoint::from_coords(c + h * k3));
    return c + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

Vec4 rk4_run(const VectorField& field, Vec4 c, double T, int steps) {
    const double h = T / steps;
    for (int i = 0; i < steps; ++i) {
        c = rk4_step(field, c, h);
        if (!(c[1] > 0.0))
            throw std::domain_error("integrate: trajectory left y > 0 near t = " +
                                    std::to_string((i + 1) * h));
    }
    return c;
}

}  // namespace

FlowResult integrate(const AmbientPoint& p, const VectorField& field, double T, int steps) {
    if (steps <= 0)
        throw std::invalid_argument("integrate: steps must be positive");
    const Vec4 end = rk4_run(field, p.coords(), T, steps);
    const Vec4 end2 = rk4_run(field, p.coords(), T, 2 * steps);
    FlowResult out;
    out.endpoint = AmbientPoint::from_coords(end);
    out.steps = steps;
    out.max_local_error = (end - end2).cwiseAbs().maxCoeff();
    return out;
}

double symplecto_residual(const PointMap& map, std::span<const AmbientPoint> samples,
                          const ProfileFunction& profile) {
    double worst = 0.0;
    const auto omega = [&](const AmbientPoint& q) {
        return geometry::symplectic_form(q, profile).m;
    };
    for (const AmbientPoint& p : samples) {
        const Mat4 pulled = geometry::pullback(map, p, omega);
        worst = std::max(worst, (pulled - omega(p)).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace pkgeom::hamilton
