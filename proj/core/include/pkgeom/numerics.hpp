#pragma once

#include <pkgeom/types.hpp>

#include <cstdint>
#include <functional>
#include <random>

namespace pkgeom::numerics {

/// Step rule for first-derivative central differences: h·max(1,|c|).
inline double fd_step(double coord, double h = 1e-5) {
    return h * std::max(1.0, std::abs(coord));
}

/// Adaptive Simpson quadrature of f on [a,b] to absolute tolerance tol.
/// Throws std::runtime_error if the recursion does not converge.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth = 48);

/// Central-difference Jacobian of a point map, columns = image of ∂x,∂y,∂u,∂v.
Mat4 map_jacobian(const PointMap& map, const AmbientPoint& p, double h = 1e-5);

/// Deterministic sampler of ambient points in a fixed box, seeded.
class PointSampler {
  public:
    explicit PointSampler(std::uint64_t seed) : rng_(seed) {}
    AmbientPoint next();
    double uniform(double lo, double hi);

  private:
    std::mt19937_64 rng_;
};

}  // namespace pkgeom::numerics
