#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <stdexcept>

namespace pkgeom {

using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;
using Mat2 = Eigen::Matrix2d;
using Mat2c = Eigen::Matrix2cd;
using Complex = std::complex<double>;

/// A point (x, y, u, v) of H²×ℂ with y > 0.  Base coordinate z = x+iy,
/// fiber coordinate w = u+iv.
struct AmbientPoint {
    double x = 0.0;
    double y = 1.0;
    double u = 0.0;
    double v = 0.0;

    AmbientPoint() = default;
    AmbientPoint(double x_, double y_, double u_, double v_) : x(x_), y(y_), u(u_), v(v_) {
        if (!(y > 0.0))
            throw std::domain_error("AmbientPoint: y must be positive, got y=" + std::to_string(y_));
    }

    Complex z() const { return {x, y}; }
    Complex w() const { return {u, v}; }

    /// |w|_z² = y³(u²+v²); zero exactly on the zero section.
    double fiber_norm_sq() const { return y * y * y * (u * u + v * v); }

    Vec4 coords() const { return Vec4(x, y, u, v); }
    static AmbientPoint from_coords(const Vec4& c) { return {c[0], c[1], c[2], c[3]}; }
};

enum class FrameKind { Metric, Symplectic, ComplexStructure, Generic };

/// A 4×4 real matrix in the frame {∂x, ∂y, ∂u, ∂v}.
struct FrameMatrix {
    Mat4 m = Mat4::Zero();
    FrameKind kind = FrameKind::Generic;
};

using TangentVector = Vec4;
using PointMap = std::function<AmbientPoint(const AmbientPoint&)>;

}  // namespace pkgeom
