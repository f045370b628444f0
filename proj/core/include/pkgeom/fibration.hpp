#pragma once

#include <pkgeom/profile.hpp>
#include <pkgeom/types.hpp>

namespace pkgeom::fibration {

/// A point of the base B = {b1 < 0} ⊂ ℝ², image of H = (H1, H2).
struct BasePoint {
    double b1;
    double b2;
    BasePoint(double b1_, double b2_) : b1(b1_), b2(b2_) {
        if (!(b1 < 0.0))
            throw std::domain_error("BasePoint: b1 must be negative, got " + std::to_string(b1_));
    }
};

enum class SectionKind { Naive, Lagrangianized };

struct SectionHandle {
    SectionKind kind = SectionKind::Lagrangianized;
    double b1_ref = -1.0;     // quadrature base point, must be < 0
    double quad_tol = 1e-9;   // adaptive Simpson tolerance for the shift
};

/// (H1(p), H2(p)).  Throws std::domain_error on the zero section.
BasePoint project(const AmbientPoint& p, const ProfileFunction& profile);

/// Right inverse of project in the gauge y = 1, v = 0, u > 0:
/// u = √(f⁻¹((3/2)b1)), x = b2/(2(1 - (3/2)b1)).
AmbientPoint naive_section(const BasePoint& b, const ProfileFunction& profile);

/// Signed shift a2(b) = -∫_{b1_ref}^{b1} defect_naive(τ, b2) dτ.
double lagrangian_shift(const BasePoint& b, const ProfileFunction& profile, double b1_ref,
                        double quad_tol = 1e-9);

/// σ(b) = flow_h2(naive_section(b), a2(b)): the fiberwise correction that
/// cancels the naive section's symplectic defect by quadrature.
AmbientPoint lagrangianize(const BasePoint& b, const ProfileFunction& profile, double b1_ref,
                           double quad_tol = 1e-9);

AmbientPoint section_point(const SectionHandle& sec, const BasePoint& b,
                           const ProfileFunction& profile);

/// (σ*ω_f)(∂b1, ∂b2) at b, pushforwards by central differences.
double section_defect(const SectionHandle& sec, const BasePoint& b,
                      const ProfileFunction& profile);

/// Action-angle coordinates (θ mod 2π, h1 < 0, s, h2).
struct ActionAngleCoords {
    double theta = 0.0;
    double h1 = -1.0;
    double s = 0.0;
    double h2 = 0.0;
};

/// θ from the fiber phase against the section, s from the y-ratio:
/// flow_h2(flow_h1(σ(b), θ), s) = p.
ActionAngleCoords chart(const AmbientPoint& p, const SectionHandle& sec,
                        const ProfileFunction& profile);

AmbientPoint chart_inverse(const ActionAngleCoords& c, const SectionHandle& sec,
                           const ProfileFunction& profile);

/// M_ab = ω_f(E_a, E_b) in the frame E = (∂θ, ∂H1, ∂s, ∂H2) obtained by
/// central differences of chart_inverse.  For a Lagrangian section the
/// matrix is canonical: M(θ,H1) = M(s,H2) = 1, other independent entries 0.
Mat4 darboux_matrix(const AmbientPoint& p, const SectionHandle& sec,
                    const ProfileFunction& profile);

struct PeriodGenerator {
    double per1 = 0.0;                  // 2π (coefficient of dH1)
    double per2 = 0.0;                  // 0  (coefficient of dH2)
    double return_distance = 0.0;       // ‖flow_h1(σ(b), 2π) - σ(b)‖∞
    double min_scan_distance = 0.0;     // min over s ∈ [1e-3, 10] of the h2 return distance
};

/// The period lattice is generated by 2π·dH1: the h1-flow closes up after
/// 2π while the h2-flow never returns on the scanned window.
PeriodGenerator period_generator(const BasePoint& b, const ProfileFunction& profile);

}  // namespace pkgeom::fibration
