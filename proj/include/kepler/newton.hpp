#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "kepler/errors.hpp"
#include "kepler/vec.hpp"

namespace kepler {

/// Ellipse given by center and two orthogonal semi-axis vectors,
/// parametrized as P(t) = center + u_axis cos t + w_axis sin t. Harmonic
/// motion in t satisfies P'' = center - P identically. focus_primary is the
/// focus used as the second areal center, focus_secondary the other one.
struct CenteredEllipse {
    Vec3 center;
    Vec3 u_axis;
    Vec3 w_axis;
    double a;
    double b;
    Vec3 unit_u;
    Vec3 unit_w;
    Vec3 unit_normal;
    Vec3 focus_primary;
    Vec3 focus_secondary;

    CenteredEllipse(const Vec3& center_, const Vec3& u_axis_, const Vec3& w_axis_)
        : center(center_), u_axis(u_axis_), w_axis(w_axis_), a(norm(u_axis_)), b(norm(w_axis_)) {
        if (!(b > 0.0) || a < b) {
            throw InvalidArgument("CenteredEllipse: require |u_axis| >= |w_axis| > 0, got " +
                                  std::to_string(a) + ", " + std::to_string(b));
        }
        if (std::abs(dot(u_axis, w_axis)) > 1e-12 * a * b) {
            throw InvalidArgument("CenteredEllipse: axes are not orthogonal");
        }
        unit_u = u_axis / a;
        unit_w = w_axis / b;
        unit_normal = cross(unit_u, unit_w);
        const double c = std::sqrt(std::max(a * a - b * b, 0.0));
        focus_primary = center - unit_u * c;
        focus_secondary = center + unit_u * c;
    }
};

inline CenteredEllipse make_ellipse_xy(double a, double b, const Vec3& center = Vec3{}) {
    return CenteredEllipse(center, Vec3{a, 0.0, 0.0}, Vec3{0.0, b, 0.0});
}

inline Vec3 harmonic_position(const CenteredEllipse& ell, double t) {
    return ell.center + ell.u_axis * std::cos(t) + ell.w_axis * std::sin(t);
}

/// Velocity of the harmonic motion; also the tangent direction of the
/// ellipse at parameter t.
inline Vec3 harmonic_velocity(const CenteredEllipse& ell, double t) {
    return ell.u_axis * (-std::sin(t)) + ell.w_axis * std::cos(t);
}

namespace detail {

// Intersection of {p0 + lambda dir0} and {p1 + mu dir1}, all in the ellipse
// plane, expressed in (unit_u, unit_w) coordinates relative to the center.
struct PlanePoint {
    double x;
    double y;
};

inline PlanePoint to_plane(const CenteredEllipse& ell, const Vec3& p) {
    const Vec3 rel = p - ell.center;
    return {dot(rel, ell.unit_u), dot(rel, ell.unit_w)};
}

inline Vec3 from_plane(const CenteredEllipse& ell, const PlanePoint& p) {
    return ell.center + ell.unit_u * p.x + ell.unit_w * p.y;
}

inline PlanePoint intersect_lines(const PlanePoint& p0, const PlanePoint& dir0,
                                  const PlanePoint& p1, const PlanePoint& dir1) {
    const double det = dir0.x * (-dir1.y) - (-dir1.x) * dir0.y;
    const double scale = std::hypot(dir0.x, dir0.y) * std::hypot(dir1.x, dir1.y);
    if (std::abs(det) <= 1e-12 * scale) {
        throw ParallelLines("intersect_lines: directions are parallel");
    }
    const double bx = p1.x - p0.x;
    const double by = p1.y - p0.y;
    const double lambda = (bx * (-dir1.y) - (-dir1.x) * by) / det;
    return {p0.x + lambda * dir0.x, p0.y + lambda * dir0.y};
}

} // namespace detail

/// Intersection of the line through the ellipse center parallel to the
/// tangent at P(t) with the line through P(t) and second_center. When the
/// second center is a focus, |P(t) - intercept| equals the semi-major axis.
inline Vec3 center_parallel_intercept(const CenteredEllipse& ell, double t,
                                      const Vec3& second_center) {
    const Vec3 r = harmonic_position(ell, t);
    if (norm(r - second_center) == 0.0) {
        throw DegenerateConfiguration("center_parallel_intercept: r coincides with the second center");
    }
    const Vec3 tangent = harmonic_velocity(ell, t);
    const auto r2 = detail::to_plane(ell, r);
    const auto d2 = detail::to_plane(ell, second_center);
    const auto t2 = detail::to_plane(ell, ell.center + tangent);
    const auto e2 = detail::intersect_lines({0.0, 0.0}, t2, r2, {d2.x - r2.x, d2.y - r2.y});
    return detail::from_plane(ell, e2);
}

inline Vec3 center_parallel_intercept(const CenteredEllipse& ell, double t) {
    return center_parallel_intercept(ell, t, ell.focus_primary);
}

/// Intersection of the line through the secondary focus parallel to the
/// tangent at P(t) with the line through the primary focus and P(t).
inline Vec3 focus_parallel_intercept(const CenteredEllipse& ell, double t) {
    const Vec3 r = harmonic_position(ell, t);
    if (norm(r - ell.focus_primary) == 0.0) {
        throw DegenerateConfiguration("focus_parallel_intercept: r coincides with the focus");
    }
    const Vec3 tangent = harmonic_velocity(ell, t);
    const auto r2 = detail::to_plane(ell, r);
    const auto d2 = detail::to_plane(ell, ell.focus_primary);
    const auto b2 = detail::to_plane(ell, ell.focus_secondary);
    const auto t2 = detail::to_plane(ell, ell.center + tangent);
    const auto f2 = detail::intersect_lines(b2, t2, d2, {r2.x - d2.x, r2.y - d2.y});
    return detail::from_plane(ell, f2);
}

/// Predicted ratio of the two accelerations, |r-e|^3 / (|r-c| |r-d|^2).
inline double acceleration_ratio(const Vec3& r, const Vec3& c, const Vec3& d, const Vec3& e_point) {
    const double re = norm(r - e_point);
    const double rc = norm(r - c);
    const double rd = norm(r - d);
    if (re == 0.0 || rc == 0.0 || rd == 0.0) {
        throw DegenerateConfiguration("acceleration_ratio: coincident points");
    }
    return re * re * re / (rc * rd * rd);
}

/// ds/dt of the equal-areal reparametrization about `second_center`,
/// |r - d| / |r - e|.
inline double equal_areal_slope(const CenteredEllipse& ell, const Vec3& second_center, double t) {
    const Vec3 r = harmonic_position(ell, t);
    const Vec3 e_point = center_parallel_intercept(ell, t, second_center);
    return norm(r - second_center) / norm(r - e_point);
}

/// Tabulated monotone map between harmonic time t in [0, 2*pi] and the
/// equal-areal time s. Evaluation uses cubic Hermite interpolation with the
/// exact slopes; inversion uses Newton iteration with a bisection fallback.
class ArealReparam {
public:
    ArealReparam(std::vector<double> t_nodes, std::vector<double> s_nodes,
                 std::vector<double> slopes)
        : t_nodes_(std::move(t_nodes)), s_nodes_(std::move(s_nodes)), slopes_(std::move(slopes)),
          step_(t_nodes_.at(1) - t_nodes_.at(0)) {}

    const std::vector<double>& t_nodes() const { return t_nodes_; }
    const std::vector<double>& s_nodes() const { return s_nodes_; }
    double total() const { return s_nodes_.back(); }

    double s_at(double t) const {
        const auto [cell, theta] = locate_t(t);
        return hermite(cell, theta);
    }

    double t_at(double s) const {
        if (s < 0.0 || s > total()) {
            throw InvalidArgument("ArealReparam: s out of range");
        }
        auto it = std::upper_bound(s_nodes_.begin(), s_nodes_.end(), s);
        std::size_t cell = it == s_nodes_.begin() ? 0 : static_cast<std::size_t>(it - s_nodes_.begin()) - 1;
        cell = std::min(cell, s_nodes_.size() - 2);

        double lo = 0.0, hi = 1.0, theta = 0.5;
        for (int iter = 0; iter < 100; ++iter) {
            const double val = hermite(cell, theta) - s;
            if (std::abs(val) <= 1e-15 * std::max(total(), 1.0)) break;
            if (val > 0.0) hi = theta;
            else lo = theta;
            const double deriv = hermite_deriv(cell, theta);
            double next = deriv > 0.0 ? theta - val / deriv : 0.5 * (lo + hi);
            if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
            theta = next;
        }
        return t_nodes_[cell] + theta * step_;
    }

private:
    std::pair<std::size_t, double> locate_t(double t) const {
        if (t < t_nodes_.front() || t > t_nodes_.back()) {
            throw InvalidArgument("ArealReparam: t out of range");
        }
        std::size_t cell = std::min(static_cast<std::size_t>((t - t_nodes_.front()) / step_),
                                    t_nodes_.size() - 2);
        return {cell, (t - t_nodes_[cell]) / step_};
    }

    double hermite(std::size_t cell, double theta) const {
        const double t2 = theta * theta, t3 = t2 * theta;
        return s_nodes_[cell] * (2.0 * t3 - 3.0 * t2 + 1.0) +
               step_ * slopes_[cell] * (t3 - 2.0 * t2 + theta) +
               s_nodes_[cell + 1] * (-2.0 * t3 + 3.0 * t2) +
               step_ * slopes_[cell + 1] * (t3 - t2);
    }

    double hermite_deriv(std::size_t cell, double theta) const {
        const double t2 = theta * theta;
        return s_nodes_[cell] * (6.0 * t2 - 6.0 * theta) +
               step_ * slopes_[cell] * (3.0 * t2 - 4.0 * theta + 1.0) +
               s_nodes_[cell + 1] * (-6.0 * t2 + 6.0 * theta) +
               step_ * slopes_[cell + 1] * (3.0 * t2 - 2.0 * theta);
    }

    std::vector<double> t_nodes_;
    std::vector<double> s_nodes_;
    std::vector<double> slopes_;
    double step_;
};

/// Tabulates s(t) over one full turn by Simpson integration of
/// ds/dt = |r - d| / |r - e| at n_samples uniform t nodes. The resulting
/// motion r(s) sweeps area about `second_center` at the same constant rate
/// a b / 2 as the harmonic motion does about the center.
inline ArealReparam equal_areal_reparam(const CenteredEllipse& ell, const Vec3& second_center,
                                        std::size_t n_samples) {
    if (n_samples < 16) throw InvalidArgument("equal_areal_reparam: need at least 16 samples");
    if (std::abs(dot(second_center - ell.center, ell.unit_normal)) > 1e-9 * ell.a) {
        throw InvalidArgument("equal_areal_reparam: second center is out of the ellipse plane");
    }
    const auto d2 = detail::to_plane(ell, second_center);
    const double rho = std::hypot(d2.x / ell.a, d2.y / ell.b);
    if ((1.0 - rho) * ell.b < 1e-9 * ell.a) {
        throw DegenerateConfiguration("equal_areal_reparam: second center is not strictly inside");
    }

    const double h = two_pi / static_cast<double>(n_samples);
    std::vector<double> t_nodes(n_samples + 1), s_nodes(n_samples + 1), slopes(n_samples + 1);
    for (std::size_t i = 0; i <= n_samples; ++i) {
        t_nodes[i] = static_cast<double>(i) * h;
        slopes[i] = equal_areal_slope(ell, second_center, t_nodes[i]);
    }
    s_nodes[0] = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double mid = equal_areal_slope(ell, second_center, t_nodes[i] + 0.5 * h);
        s_nodes[i + 1] = s_nodes[i] + h / 6.0 * (slopes[i] + 4.0 * mid + slopes[i + 1]);
    }
    return ArealReparam(std::move(t_nodes), std::move(s_nodes), std::move(slopes));
}

struct InverseSquareCheck {
    double q_spread;           // (max - min)/mean of |d^2r/ds^2| |r - d|^2
    double max_direction_angle; // worst angle between d^2r/ds^2 and d - r
};

/// Samples the equal-areal motion about the primary focus on a uniform
/// s-grid and checks that the central-difference acceleration obeys an
/// attractive inverse-square law: |d^2r/ds^2| |r-d|^2 constant, direction
/// toward the focus. Both measures converge at second order in the step.
inline InverseSquareCheck inverse_square_check(const CenteredEllipse& ell, std::size_t n_samples) {
    const Vec3 d = ell.focus_primary;
    const ArealReparam reparam = equal_areal_reparam(ell, d, n_samples);
    const double s_total = reparam.total();
    const double h = s_total / static_cast<double>(n_samples);

    std::vector<Vec3> pts(n_samples);
    for (std::size_t j = 0; j < n_samples; ++j) {
        pts[j] = harmonic_position(ell, reparam.t_at(static_cast<double>(j) * h));
    }

    double q_min = 0.0, q_max = 0.0, q_sum = 0.0, worst_angle = 0.0;
    for (std::size_t j = 0; j < n_samples; ++j) {
        const Vec3& prev = pts[(j + n_samples - 1) % n_samples];
        const Vec3& next = pts[(j + 1) % n_samples];
        const Vec3 accel = (next - 2.0 * pts[j] + prev) / (h * h);
        const double q = norm(accel) * norm_squared(pts[j] - d);
        if (j == 0) q_min = q_max = q;
        q_min = std::min(q_min, q);
        q_max = std::max(q_max, q);
        q_sum += q;
        const Vec3 toward = d - pts[j];
        const double angle = std::atan2(norm(cross(accel, toward)), dot(accel, toward));
        worst_angle = std::max(worst_angle, angle);
    }
    const double mean = q_sum / static_cast<double>(n_samples);
    return InverseSquareCheck{(q_max - q_min) / mean, worst_angle};
}

/// One sample of the two-center comparison on the uniform harmonic grid.
struct TwoCenterSample {
    double t;
    double s;
    Vec3 r;
    Vec3 e_point;
    Vec3 f_point;
    double ratio_formula; // |r-e|^3 / (|r-c| |r-d|^2)
    double ratio_numeric; // |d^2r/ds^2| / |d^2r/dt^2| by finite differences
    double q;             // |d^2r/ds^2| |r-d|^2
};

/// Evaluates the acceleration-ratio theorem on a uniform harmonic grid:
/// d^2r/dt^2 by uniform central differences, d^2r/ds^2 by the three-point
/// formula on the (smoothly) nonuniform s values of the same samples.
inline std::vector<TwoCenterSample> two_center_samples(const CenteredEllipse& ell,
                                                       std::size_t n_samples) {
    const Vec3 d = ell.focus_primary;
    const ArealReparam reparam = equal_areal_reparam(ell, d, n_samples);
    const double s_total = reparam.total();
    const double h = two_pi / static_cast<double>(n_samples);

    std::vector<TwoCenterSample> samples(n_samples);
    for (std::size_t i = 0; i < n_samples; ++i) {
        const double t = reparam.t_nodes()[i];
        TwoCenterSample& smp = samples[i];
        smp.t = t;
        smp.s = reparam.s_nodes()[i];
        smp.r = harmonic_position(ell, t);
        smp.e_point = center_parallel_intercept(ell, t, d);
        smp.f_point = focus_parallel_intercept(ell, t);
        smp.ratio_formula = acceleration_ratio(smp.r, ell.center, d, smp.e_point);
    }
    for (std::size_t i = 0; i < n_samples; ++i) {
        const std::size_t prev = (i + n_samples - 1) % n_samples;
        const std::size_t next = (i + 1) % n_samples;
        const Vec3 accel_t = (samples[next].r - 2.0 * samples[i].r + samples[prev].r) / (h * h);

        double s_prev = samples[prev].s, s_next = samples[next].s;
        if (i == 0) s_prev -= s_total;
        if (i + 1 == n_samples) s_next += s_total;
        const double h_minus = samples[i].s - s_prev;
        const double h_plus = s_next - samples[i].s;
        const Vec3 accel_s = 2.0 *
                             (samples[prev].r * h_plus - samples[i].r * (h_minus + h_plus) +
                              samples[next].r * h_minus) /
                             (h_minus * h_plus * (h_minus + h_plus));

        samples[i].ratio_numeric = norm(accel_s) / norm(accel_t);
        samples[i].q = norm(accel_s) * norm_squared(samples[i].r - d);
    }
    return samples;
}

/// Worst relative mismatch between the finite-difference acceleration ratio
/// and the theorem's |r-e|^3 : |r-c| |r-d|^2; second order in the step.
inline double acceleration_ratio_residual(const CenteredEllipse& ell, std::size_t n_samples) {
    double worst = 0.0;
    for (const TwoCenterSample& smp : two_center_samples(ell, n_samples)) {
        worst = std::max(worst, std::abs(smp.ratio_numeric / smp.ratio_formula - 1.0));
    }
    return worst;
}

} // namespace kepler
