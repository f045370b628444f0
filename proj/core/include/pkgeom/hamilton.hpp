#pragma once

#include <pkgeom/geometry.hpp>
#include <pkgeom/profile.hpp>
#include <pkgeom/types.hpp>

#include <span>

namespace pkgeom::hamilton {

using ScalarField = std::function<double(const AmbientPoint&)>;

/// H1 = (2/3) f(y³|w|²).  Nonpositive, zero exactly on the zero section.
double h1(const AmbientPoint& p, const ProfileFunction& profile);

/// H2 = 2(x/y)(1 - f(y³|w|²)).
double h2(const AmbientPoint& p, const ProfileFunction& profile);

/// Selector for a Hamiltonian: one of the two integrals of motion or a
/// user scalar (finite on y > 0).
class HamiltonianTag {
  public:
    enum class Kind { H1, H2, User };
    static HamiltonianTag hamiltonian_h1() { return HamiltonianTag(Kind::H1); }
    static HamiltonianTag hamiltonian_h2() { return HamiltonianTag(Kind::H2); }
    static HamiltonianTag user(ScalarField f);

    Kind kind() const { return kind_; }
    double value(const AmbientPoint& p, const ProfileFunction& profile) const;

  private:
    explicit HamiltonianTag(Kind k) : kind_(k) {}
    Kind kind_;
    ScalarField fn_;
};

/// X_{H1} = u∂v - v∂u;  X_{H2} = 2(x∂x + y∂y) - 3(u∂u + v∂v).
/// Throws std::invalid_argument for a user tag.
TangentVector field_closed_form(const AmbientPoint& p, const HamiltonianTag& which);

/// Gradient of H by central differences (step 1e-5·max(1,|c|)).
Vec4 gradient(const HamiltonianTag& H, const AmbientPoint& p, const ProfileFunction& profile);

/// Solves ω(X, e_a) = dH(e_a) for X; the gradient side is finite-difference,
/// so this route is independent of the closed forms.
TangentVector field_by_solve(const AmbientPoint& p, const HamiltonianTag& H,
                             const ProfileFunction& profile);

/// {F,G} = ω_p(X_F, X_G), both fields by solve.
double poisson(const AmbientPoint& p, const HamiltonianTag& F, const HamiltonianTag& G,
               const ProfileFunction& profile);

/// Fiber rotation: (x, y, u cosθ - v sinθ, u sinθ + v cosθ).
AmbientPoint flow_h1(const AmbientPoint& p, double theta);

/// (e^{2s}x, e^{2s}y, e^{-3s}u, e^{-3s}v).
AmbientPoint flow_h2(const AmbientPoint& p, double s);

using VectorField = std::function<TangentVector(const AmbientPoint&)>;

struct FlowResult {
    AmbientPoint endpoint;
    int steps = 0;
    double max_local_error = 0.0;  // endpoint distance against step halving
};

/// Classic fixed-step RK4.  Throws std::domain_error with an exit-time
/// estimate if the trajectory leaves y > 0.
FlowResult integrate(const AmbientPoint& p, const VectorField& field, double T, int steps);

/// max over samples of ‖(φ*ω_f)_p - (ω_f)_p‖∞.
double symplecto_residual(const PointMap& map, std::span<const AmbientPoint> samples,
                          const ProfileFunction& profile);

}  // namespace pkgeom::hamilton
