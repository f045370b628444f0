#pragma once

#include <pkgeom/profile.hpp>
#include <pkgeom/types.hpp>

#include <span>

namespace pkgeom::curvature {

/// Complexified Ricci components at a normal-form point (i,u).  In this
/// normalization R_zz̄ = (Ric_xx+Ric_yy)/2 etc., i.e. -∂²/∂z∂z̄ log det(g).
/// At (i,u) the diagonal entries are real and R_zw̄ purely imaginary.
struct RicciComponents {
    double zz = 0.0;
    double ww = 0.0;
    Complex zw = 0.0;
};

/// Complexified inverse metric: inverse of M_{jk̄} = g(x_j,x_k) + g(y_j,y_k)
/// + i(g(x_j,y_k) - g(y_j,x_k)) with (x_1,y_1) = (∂x,∂y), (x_2,y_2) = (∂u,∂v).
struct InverseMetricComponents {
    double zz = 0.0;
    double ww = 0.0;
    Complex zw = 0.0;
};

/// det(g_f) = (16/9) y² (f')² (1-f)², equal to the determinant of the real
/// 4×4 metric matrix.
double det_metric(const AmbientPoint& p, const ProfileFunction& profile);

/// Closed forms at (i,u), t = u²:
/// g^{zz̄} = 1/(2(1-f)), g^{ww̄} = 3(1-f+3f'u²)/(8f'(1-f)), g^{zw̄} = i·3u/(4(1-f)).
InverseMetricComponents inverse_metric_at_iu(double u, const ProfileFunction& profile);

/// Complexified inverse from the real metric matrix at any point (oracle
/// for the closed forms above).
InverseMetricComponents inverse_metric_complexified(const AmbientPoint& p,
                                                    const ProfileFunction& profile);

/// Closed Ricci components at (i,u), t = u², with G_f from the profile:
///   R_zz̄ = 1/2 + 3u²(f'/(1-f) - f''/f') + (9/2)u⁴G_f
///   R_ww̄ = -2(f''/f' - f'/(1-f)) + 2u²G_f
///   R_zw̄ = i(3u(f''/f' - f'/(1-f)) - 3u³G_f)
RicciComponents ricci_closed(double u, const ProfileFunction& profile);

/// Closed scalar invariant at (i,u) in the complexified normalization
/// (value 1 on the zero section for the linear family):
///   1/(1-f) - (3/4)f''/(f')² + (3/2)(u²/(1-f))(6u²G_f
///     + (11/2)(f'/(1-f) - f''/f') + G_f(1-f)/(2f')).
double scalar_closed(double u, const ProfileFunction& profile);

/// Contraction g^{zz̄}R_zz̄ + g^{ww̄}R_ww̄ + 2Re(g^{zw̄}R_zw̄); equals
/// scalar_closed when fed the closed components.
double scalar_contraction(const InverseMetricComponents& gi, const RicciComponents& r);

/// Ricci components at (i,u) from -∂²/∂z_i∂z̄_j log det(g_f) by central
/// differences of det_metric (one Richardson level).
RicciComponents ricci_numeric_logdet(double u, const ProfileFunction& profile, double step);

// ---- real-coordinate Levi-Civita pipeline ------------------------------
// Dimension-generic; used both for the ambient metric and for calibration
// surfaces (round unit 2-sphere: scalar +2; hyperbolic plane: -2).

using MetricField = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Real Ricci tensor by finite-difference Christoffels (one Richardson level).
Eigen::MatrixXd ricci_real(const MetricField& g, const Eigen::VectorXd& at, double step);

/// Real scalar curvature g^{jl}Ric_{jl}.
double scalar_real(const MetricField& g, const Eigen::VectorXd& at, double step);

Mat4 ricci_real_ambient(const AmbientPoint& p, const ProfileFunction& profile, double step);
double scalar_real_ambient(const AmbientPoint& p, const ProfileFunction& profile, double step);

/// Ricci components at (i,u) from the real Levi-Civita pipeline.
RicciComponents ricci_numeric_levicivita(double u, const ProfileFunction& profile, double step);

/// Scalar invariant at p via the Levi-Civita pipeline: real Ricci at the
/// orbit's normal-form point (i, u_norm, 0), complexified and contracted in
/// the same normalization as scalar_closed.  Independent of the log-det
/// route (uses only metric compatibility).
double scalar_numeric_full(const AmbientPoint& p, const ProfileFunction& profile, double step);

struct BoundScanReport {
    double max_scal = 0.0;
    double argmax_u_norm = 0.0;
    AmbientPoint argmax_point;
    double zero_section_value = 0.0;  // scalar on the w = 0 slice
    std::size_t points = 0;
    bool pass = false;  // max_scal < 1
};

/// Evaluates scalar_closed at the normal forms of all grid points (x,y,u)
/// with u ≠ 0, profile f(t) = -kt.
BoundScanReport bound_scan(double k, std::span<const double> u_grid,
                           std::span<const double> y_grid, std::span<const double> x_grid);

}  // namespace pkgeom::curvature
