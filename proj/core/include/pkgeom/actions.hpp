#pragma once

#include <pkgeom/profile.hpp>
#include <pkgeom/types.hpp>

#include <span>

namespace pkgeom::actions {

/// An element of SL(2,ℝ); construction checks |det - 1| ≤ 1e-12.
struct MoebiusElement {
    Mat2 m = Mat2::Identity();

    MoebiusElement() = default;
    explicit MoebiusElement(const Mat2& a);
    MoebiusElement(double a, double b, double c, double d);
    static MoebiusElement identity() { return MoebiusElement(); }
    MoebiusElement inverse() const;

    double a() const { return m(0, 0); }
    double b() const { return m(0, 1); }
    double c() const { return m(1, 0); }
    double d() const { return m(1, 1); }
};

/// A ∘ rotation(θ) ∘ h1^{flip1} ∘ h2^{flip2}, applied right to left;
/// h1(z,w) = (-z̄, w), h2(z,w) = (z, w̄).
struct IsometryElement {
    MoebiusElement A;
    double theta = 0.0;   // in [0, 2π)
    bool flip1 = false;
    bool flip2 = false;
};

/// Traceless 2×2 real matrix; construction checks |tr| ≤ 1e-12.
struct LieAlgebraElement {
    Mat2 m = Mat2::Zero();
    LieAlgebraElement() = default;
    explicit LieAlgebraElement(const Mat2& x);
};

/// A·(z,w) = ((az+b)/(cz+d), (cz+d)³ w).
AmbientPoint sl2_apply(const MoebiusElement& A, const AmbientPoint& p);

/// θ·(z,w) = (z, e^{iθ}w).
AmbientPoint circle_apply(double theta, const AmbientPoint& p);

/// j(x+iy) = [[x/y, -(x²+y²)/y], [1/y, -x/y]]; trace 0, j² = -Id.
Mat2 j_map(double x, double y);

/// The element Q with Q·i = z: Q = [[√y, x/√y], [0, 1/√y]].
MoebiusElement base_transitive(double x, double y);

/// ⟨μ(z,w), X⟩ = (1 - f(y³|w|²))·tr(j(z)X).
double moment_map(const AmbientPoint& p, const LieAlgebraElement& X,
                  const ProfileFunction& profile);

/// exp(sX) for traceless X, closed form through X² = -det(X)·Id.
Mat2 sl2_exp(const LieAlgebraElement& X, double s);

/// Generator V_X at p: central difference of s ↦ exp(sX)·p at s = 0.
TangentVector infinitesimal_generator(const AmbientPoint& p, const LieAlgebraElement& X);

/// ‖dμ^X - ω(V_X, ·)‖∞ at p, both sides by finite differences.
double moment_residual(const AmbientPoint& p, const LieAlgebraElement& X,
                       const ProfileFunction& profile);

struct NormalForm {
    double u_norm = 0.0;      // y^{3/2}|w|, the fiber norm
    IsometryElement elem;     // maps (i, u_norm, 0) to p
};

/// Orbit representative (i, u_norm) of p under SL(2,ℝ)×S¹.
NormalForm normal_form(const AmbientPoint& p);

AmbientPoint isometry_apply(const IsometryElement& e, const AmbientPoint& p);

/// max over samples of ‖(e*g_f)_p - (g_f)_p‖∞.
double isometry_residual(const IsometryElement& e, std::span<const AmbientPoint> samples,
                         const ProfileFunction& profile);

/// Recovers (A, θ, flips) from a black-box map of the canonical form:
/// flips from the orientation of the Jacobian blocks at (i,1,0), A from the
/// image point and the horizontal differential, θ from a vertical probe.
/// Throws std::runtime_error if the recovered element does not reproduce
/// the map to 1e-6 at 20 sample points.
IsometryElement recover_parameters(const PointMap& h, const ProfileFunction& profile);

}  // namespace pkgeom::actions
