#pragma once

#include <pkgeom/profile.hpp>
#include <pkgeom/types.hpp>

#include <array>

namespace pkgeom::geometry {

/// g_f at p, frame {∂x,∂y,∂u,∂v}, f and f' evaluated at t = y³(u²+v²):
///
///   [ λ        0        2f'vy²   -2f'uy² ]        1-f+3(u²+v²)y³f'
///   [ 0        λ        2f'uy²    2f'vy² ]   λ = ------------------
///   [ 2f'vy²   2f'uy²   (4/3)f'y³  0     ]              y²
///   [-2f'uy²   2f'vy²   0         (4/3)f'y³ ]
FrameMatrix metric(const AmbientPoint& p, const ProfileFunction& profile);

/// ω_f at p: ω(∂x,∂y) = (-1+f-3f't)/y², ω(∂u,∂v) = -(4/3)f'y³,
/// ω(∂x,∂u) = ω(∂y,∂v) = -2y²f'u, ω(∂u,∂y) = -2y²f'v, ω(∂v,∂x) = 2y²f'v.
FrameMatrix symplectic_form(const AmbientPoint& p, const ProfileFunction& profile);

/// The constant complex structure: blocks [[0,-1],[1,0]] on (x,y) and (u,v).
FrameMatrix complex_structure();

struct CompatibilityResiduals {
    double complex_structure_sq = 0.0;  // ‖I² + Id‖∞
    double hermitian = 0.0;             // ‖g(I·,I·) - g‖∞
    double fundamental_form = 0.0;      // ‖ω(·,·) - g(·,I·)‖∞
    int signature_defect = 0;           // |#pos-2| + |#neg-2| of eigenvalues of g
    double max() const;
};

CompatibilityResiduals compatibility_residuals(const AmbientPoint& p,
                                               const ProfileFunction& profile);

/// (#positive, #negative) eigenvalues of g_f at p.
std::pair<int, int> metric_signature(const AmbientPoint& p, const ProfileFunction& profile);

/// The four independent components (dω)(e_a,e_b,e_c) = ∂_aω_bc - ∂_bω_ac + ∂_cω_ab
/// by central differences, triples (012),(013),(023),(123).
std::array<double, 4> d_omega_components(const AmbientPoint& p, const ProfileFunction& profile,
                                         double step);

/// max |component| of dω_f at p.  Pre: y > step.
double d_omega_residual(const AmbientPoint& p, const ProfileFunction& profile, double step);

/// Same with one Richardson level (step and step/2).
double d_omega_residual_richardson(const AmbientPoint& p, const ProfileFunction& profile,
                                   double step);

using FormField = std::function<Mat4(const AmbientPoint&)>;

/// (φ*α)_p = Jᵀ α_{φ(p)} J with J the central-difference Jacobian of φ at p.
Mat4 pullback(const PointMap& map, const AmbientPoint& p, const FormField& form);

}  // namespace pkgeom::geometry
