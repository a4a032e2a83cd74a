#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "kepler/errors.hpp"

namespace kepler {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Real 3-vector. Constructors reject NaN/Inf so downstream algebra can
/// assume finite inputs.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3() = default;

    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {
        if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z)) {
            throw InvalidArgument("Vec3: component not finite (" + std::to_string(x_) + ", " +
                                  std::to_string(y_) + ", " + std::to_string(z_) + ")");
        }
    }

    friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator-(const Vec3& a) { return {-a.x, -a.y, -a.z}; }
    friend Vec3 operator*(const Vec3& a, double s) { return {a.x * s, a.y * s, a.z * s}; }
    friend Vec3 operator*(double s, const Vec3& a) { return a * s; }
    friend Vec3 operator/(const Vec3& a, double s) { return {a.x / s, a.y / s, a.z / s}; }
    Vec3& operator+=(const Vec3& b) { return *this = *this + b; }
    Vec3& operator-=(const Vec3& b) { return *this = *this - b; }
    Vec3& operator*=(double s) { return *this = *this * s; }
    friend bool operator==(const Vec3& a, const Vec3& b) = default;
};

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm_squared(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm_squared(a)); }

inline Vec3 normalized(const Vec3& a) {
    const double n = norm(a);
    if (n == 0.0) throw InvalidArgument("normalized: zero vector");
    return a / n;
}

/// Counterclockwise rotation of an in-plane vector by pi/2 about a unit axis.
/// Requires v to lie in the plane perpendicular to the axis.
inline Vec3 quarter_turn(const Vec3& v, const Vec3& axis) {
    if (std::abs(norm(axis) - 1.0) > 1e-9) {
        throw InvalidArgument("quarter_turn: axis is not a unit vector, |axis| = " +
                              std::to_string(norm(axis)));
    }
    if (std::abs(dot(v, axis)) > 1e-9 * norm(v)) {
        throw InvalidArgument("quarter_turn: vector is out of the rotation plane, v.axis = " +
                              std::to_string(dot(v, axis)));
    }
    return cross(axis, v);
}

/// Inverse of quarter_turn: clockwise rotation by pi/2 about the axis.
inline Vec3 quarter_turn_back(const Vec3& v, const Vec3& axis) {
    return -quarter_turn(v, axis);
}

/// Right-handed orthonormal frame (u, w, axis) of the plane perpendicular to axis.
struct PlaneFrame {
    Vec3 u;
    Vec3 w;
    Vec3 axis;
};

/// Frame of the plane perpendicular to L. u is obtained by Gram-Schmidt from
/// the first canonical basis vector not parallel to L (x first, then y), so
/// frames are reproducible across runs.
inline PlaneFrame plane_frame(const Vec3& angular_momentum) {
    const double n = norm(angular_momentum);
    if (n == 0.0) throw DegenerateOrbit("plane_frame: zero angular momentum");
    const Vec3 axis = angular_momentum / n;

    Vec3 seed{1.0, 0.0, 0.0};
    if (norm(cross(axis, seed)) <= 1e-9) seed = Vec3{0.0, 1.0, 0.0};
    const Vec3 u = normalized(seed - axis * dot(seed, axis));
    const Vec3 w = cross(axis, u);
    return PlaneFrame{u, w, axis};
}

/// Signed angle in [0, 2*pi) from origin_dir to the in-plane projection of v,
/// counterclockwise about frame.axis. origin_dir must be a unit vector in the
/// frame plane.
inline double angle_in_plane(const Vec3& v, const PlaneFrame& frame, const Vec3& origin_dir) {
    if (std::abs(norm(origin_dir) - 1.0) > 1e-9 || std::abs(dot(origin_dir, frame.axis)) > 1e-9) {
        throw InvalidArgument("angle_in_plane: origin_dir is not a unit vector in the frame plane");
    }
    const Vec3 q = cross(frame.axis, origin_dir);
    const double x = dot(v, origin_dir);
    const double y = dot(v, q);
    if (x * x + y * y <= 1e-24 * norm_squared(v) || (x == 0.0 && y == 0.0)) {
        throw DegenerateOrbit("angle_in_plane: zero in-plane projection");
    }
    double ang = std::atan2(y, x);
    if (ang < 0.0) ang += two_pi;
    if (ang >= two_pi) ang -= two_pi;
    return ang;
}

} // namespace kepler
