#pragma once

#include <array>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "kepler/conserved.hpp"
#include "kepler/dynamics.hpp"
#include "kepler/errors.hpp"
#include "kepler/vec.hpp"

namespace kepler {

/// Center of the velocity-space circle predicted from the conserved
/// quantities: the quarter turn of K about the orbit normal, divided by m L.
inline Vec3 hodograph_center(const KeplerSystem& sys, const OrbitState& state) {
    const Vec3 l = angular_momentum(state, sys.m);
    const double l_mag = norm(l);
    if (l_mag == 0.0) throw DegenerateOrbit("hodograph_center: zero angular momentum");
    return quarter_turn(lrl_vector(sys, state), l / l_mag) / (sys.m * l_mag);
}

/// Radius of the velocity-space circle, k/L.
inline double hodograph_radius(const KeplerSystem& sys, const OrbitState& state) {
    const double l_mag = norm(angular_momentum(state, sys.m));
    if (l_mag == 0.0) throw DegenerateOrbit("hodograph_radius: zero angular momentum");
    return sys.k / l_mag;
}

struct HodographFit {
    Vec3 center;
    double radius;
    double max_residual; // max over points of ||p - center| - radius|
};

namespace detail {

// Solves a 3x3 system in place by Gaussian elimination with partial pivoting.
// Returns false when the matrix is singular at the given pivot threshold.
inline bool solve3(std::array<std::array<double, 3>, 3>& m, std::array<double, 3>& rhs,
                   double pivot_tol) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int row = col + 1; row < 3; ++row) {
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        }
        if (std::abs(m[pivot][col]) <= pivot_tol) return false;
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (int row = col + 1; row < 3; ++row) {
            const double f = m[row][col] / m[col][col];
            for (int c = col; c < 3; ++c) m[row][c] -= f * m[col][c];
            rhs[row] -= f * rhs[col];
        }
    }
    for (int row = 2; row >= 0; --row) {
        for (int c = row + 1; c < 3; ++c) rhs[row] -= m[row][c] * rhs[c];
        rhs[row] /= m[row][row];
    }
    return true;
}

} // namespace detail

/// Least-squares circle through in-plane points: algebraic (Kasa) normal
/// equations on centered, scaled coordinates, followed by one Gauss-Newton
/// refinement of the geometric residuals. Deterministic and closed-form.
inline HodographFit fit_circle(std::span<const Vec3> points, const PlaneFrame& frame) {
    if (points.size() < 3) throw InvalidArgument("fit_circle: need at least 3 points");

    const std::size_t n = points.size();
    std::vector<double> xs(n), ys(n);
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] = dot(points[i], frame.u);
        ys[i] = dot(points[i], frame.w);
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);
    double scale2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] -= mean_x;
        ys[i] -= mean_y;
        scale2 += xs[i] * xs[i] + ys[i] * ys[i];
    }
    const double scale = std::sqrt(scale2 / static_cast<double>(n));
    if (scale == 0.0) throw CollinearPoints("fit_circle: all points coincide");
    for (std::size_t i = 0; i < n; ++i) {
        xs[i] /= scale;
        ys[i] /= scale;
    }

    // Kasa: minimize sum (x^2 + y^2 + D x + E y + F)^2.
    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> rhs{};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = xs[i], y = ys[i], z = x * x + y * y;
        m[0][0] += x * x;
        m[0][1] += x * y;
        m[0][2] += x;
        m[1][1] += y * y;
        m[1][2] += y;
        rhs[0] -= x * z;
        rhs[1] -= y * z;
        rhs[2] -= z;
    }
    m[1][0] = m[0][1];
    m[2][0] = m[0][2];
    m[2][1] = m[1][2];
    m[2][2] = static_cast<double>(n);
    if (!detail::solve3(m, rhs, 1e-10 * static_cast<double>(n))) {
        throw CollinearPoints("fit_circle: points are collinear");
    }
    double cx = -rhs[0] / 2.0, cy = -rhs[1] / 2.0;
    double radius = std::sqrt(std::max(cx * cx + cy * cy - rhs[2], 0.0));

    // One Gauss-Newton step on the geometric residuals |p - c| - R.
    {
        std::array<std::array<double, 3>, 3> jtj{};
        std::array<double, 3> jtf{};
        for (std::size_t i = 0; i < n; ++i) {
            const double dx = xs[i] - cx, dy = ys[i] - cy;
            const double dist = std::hypot(dx, dy);
            if (dist == 0.0) continue;
            const std::array<double, 3> row{-dx / dist, -dy / dist, -1.0};
            const double f = dist - radius;
            for (int a = 0; a < 3; ++a) {
                for (int b = a; b < 3; ++b) jtj[a][b] += row[a] * row[b];
                jtf[a] -= row[a] * f;
            }
        }
        jtj[1][0] = jtj[0][1];
        jtj[2][0] = jtj[0][2];
        jtj[2][1] = jtj[1][2];
        if (detail::solve3(jtj, jtf, 1e-12 * static_cast<double>(n))) {
            cx += jtf[0];
            cy += jtf[1];
            radius += jtf[2];
        }
    }

    cx = cx * scale + mean_x;
    cy = cy * scale + mean_y;
    radius *= scale;

    double max_residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] * scale + mean_x - cx;
        const double dy = ys[i] * scale + mean_y - cy;
        max_residual = std::max(max_residual, std::abs(std::hypot(dx, dy) - radius));
    }
    return HodographFit{frame.u * cx + frame.w * cy, radius, max_residual};
}

/// Worst deviation of the central-difference dv/dtheta from -k r / (r L)
/// along a trajectory, normalized by k/L. Second order in the step because
/// the samples are uniform in time.
inline double dv_dtheta_residual(const Trajectory& traj) {
    if (traj.size() < 3) throw InvalidArgument("dv_dtheta_residual: need at least 3 samples");
    const KeplerSystem& sys = traj.system;
    if (energy(sys, traj.front().state) >= 0.0) {
        throw NotBound("dv_dtheta_residual: orbit is not bound");
    }
    const Vec3 l0 = angular_momentum(traj.front().state, sys.m);
    const double l_mag = norm(l0);
    if (l_mag == 0.0) throw DegenerateOrbit("dv_dtheta_residual: zero angular momentum");
    const PlaneFrame frame = plane_frame(l0);
    const std::vector<double> theta = accumulated_angles(traj, frame, frame.u);

    const double speed = sys.k / l_mag;
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < traj.size(); ++i) {
        const Vec3 dv = traj[i + 1].state.v - traj[i - 1].state.v;
        const double dtheta = theta[i + 1] - theta[i - 1];
        const Vec3 target = traj[i].state.r * (-speed / norm(traj[i].state.r));
        worst = std::max(worst, norm(dv / dtheta - target) / speed);
    }
    return worst;
}

/// Maps every sampled velocity by a clockwise quarter turn followed by the
/// translation -K/(mL); the images lie on the circle of radius k/L centered
/// at the origin. Also evaluates the identity
/// k r / (r L) + K/(m L) = v n / |n| = -i v at every sample. Returns the
/// worst relative deviation, normalized by k/L.
inline double hodograph_centering_residual(const KeplerSystem& sys, const Trajectory& traj) {
    if (traj.samples.empty()) throw InvalidArgument("hodograph_centering_residual: empty trajectory");
    const Vec3 l0 = angular_momentum(traj.front().state, sys.m);
    const double l_mag = norm(l0);
    if (l_mag == 0.0) throw DegenerateOrbit("hodograph_centering_residual: zero angular momentum");
    const Vec3 axis = l0 / l_mag;
    const Vec3 k0 = lrl_vector(sys, traj.front().state);
    const Vec3 offset = k0 / (sys.m * l_mag);
    const double radius = sys.k / l_mag;

    double worst = 0.0;
    for (const auto& sample : traj.samples) {
        const Vec3 mapped = quarter_turn_back(sample.state.v, axis) - offset;
        worst = std::max(worst, std::abs(norm(mapped) - radius) / radius);

        const Vec3 lhs = sample.state.r * (radius / norm(sample.state.r)) + offset;
        worst = std::max(worst, norm(lhs - quarter_turn_back(sample.state.v, axis)) / radius);
        const Vec3 n = cross(sample.state.v * sys.m, l0);
        worst = std::max(worst, norm(lhs - n * (norm(sample.state.v) / norm(n))) / radius);
    }
    return worst;
}

/// Tangency of the orbit against the translated velocity circle: the unit
/// tangent at r is perpendicular to the direction from -K/(mL) to k r/(r L).
/// Returns the worst |cos| of the angle between them.
inline double tangency_residual(const KeplerSystem& sys, const Trajectory& traj) {
    if (traj.samples.empty()) throw InvalidArgument("tangency_residual: empty trajectory");
    const Vec3 l0 = angular_momentum(traj.front().state, sys.m);
    const double l_mag = norm(l0);
    if (l_mag == 0.0) throw DegenerateOrbit("tangency_residual: zero angular momentum");
    const Vec3 offset = lrl_vector(sys, traj.front().state) / (sys.m * l_mag);
    const double radius = sys.k / l_mag;

    double worst = 0.0;
    for (const auto& sample : traj.samples) {
        const double v_mag = norm(sample.state.v);
        if (v_mag == 0.0) throw DegenerateOrbit("tangency_residual: zero velocity sample");
        const Vec3 chord = sample.state.r * (radius / norm(sample.state.r)) + offset;
        worst = std::max(worst, std::abs(dot(sample.state.v, chord)) / (v_mag * norm(chord)));
    }
    return worst;
}

/// Scale factor between the orbit and the unit-construction ellipse in
/// velocity space is -L/H: checks -lambda K/(mL) = K/(mH) and
/// lambda k/L = -k/H = 2a. Returns the worst discrepancy relative to 2a.
inline double ellipse_scaling_residual(const KeplerSystem& sys, const OrbitState& state) {
    const double h = energy(sys, state);
    if (h >= 0.0) {
        throw NotBound("ellipse_scaling_residual: orbit is not bound, H = " + std::to_string(h));
    }
    const Vec3 l = angular_momentum(state, sys.m);
    const double l_mag = norm(l);
    if (l_mag == 0.0) throw DegenerateOrbit("ellipse_scaling_residual: zero angular momentum");
    const Vec3 lrl = lrl_vector(sys, state);

    const double lambda = -l_mag / h;
    const double two_a = -sys.k / h;
    const Vec3 focus_from_scaling = lrl * (-lambda / (sys.m * l_mag));
    const Vec3 focus_from_energy = lrl / (sys.m * h);
    const double d1 = norm(focus_from_scaling - focus_from_energy) / two_a;
    const double d2 = std::abs(lambda * sys.k / l_mag - two_a) / two_a;
    return std::max(d1, d2);
}

} // namespace kepler
