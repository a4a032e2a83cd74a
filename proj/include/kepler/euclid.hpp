#pragma once

#include <cmath>
#include <future>
#include <span>
#include <string>
#include <vector>

#include "kepler/conserved.hpp"
#include "kepler/dynamics.hpp"
#include "kepler/errors.hpp"
#include "kepler/vec.hpp"

namespace kepler {

struct Line3 {
    Vec3 point;
    Vec3 direction; // unit

    Line3(const Vec3& p, const Vec3& dir) : point(p), direction(dir) {
        if (std::abs(norm(direction) - 1.0) > 1e-12) {
            throw InvalidArgument("Line3: direction must be a unit vector");
        }
    }
};

/// Radial projection of the position onto the bounding circle of radius -k/H
/// centered at the force center: s = -k r / (|r| H).
inline Vec3 circle_projection(const KeplerSystem& sys, const OrbitState& state) {
    const double h = energy(sys, state);
    if (h >= 0.0) throw NotBound("circle_projection: orbit is not bound, H = " + std::to_string(h));
    const double r = norm(state.r);
    if (r == 0.0) throw SingularPosition("circle_projection: position at the force center");
    return state.r * (-sys.k / (r * h));
}

/// Tangent line of the orbit at the state: through r with direction v.
inline Line3 tangent_line(const OrbitState& state) {
    const double v = norm(state.v);
    if (v == 0.0) throw DegenerateOrbit("tangent_line: zero velocity");
    return Line3(state.r, state.v / v);
}

/// Normal of the tangent line inside the orbital plane: n = p x L.
/// Satisfies n.v = 0 and |n|^2 = 2m(H + k/r)L^2.
inline Vec3 normal_vector(const KeplerSystem& sys, const OrbitState& state) {
    const Vec3 l = angular_momentum(state, sys.m);
    if (norm_squared(l) == 0.0) throw DegenerateOrbit("normal_vector: zero angular momentum");
    return cross(state.v * sys.m, l);
}

/// Reflection of the projected point s across the tangent line,
/// t = s - 2((s - r).n) n / n^2. Equals K/(mH) for every bound state: the
/// reflected point is the second focus of the orbit and is conserved.
inline Vec3 reflect_in_tangent(const KeplerSystem& sys, const OrbitState& state) {
    const Vec3 s = circle_projection(sys, state);
    const Vec3 n = normal_vector(sys, state);
    const Vec3 d = s - state.r;
    return s - n * (2.0 * dot(d, n) / norm_squared(n));
}

/// Gardener residual |t - r| + |r| - (-k/H); zero when the orbit is the
/// ellipse with foci 0 and t and long axis -k/H.
inline double gardener_residual(const KeplerSystem& sys, const OrbitState& state) {
    const double h = energy(sys, state);
    if (h >= 0.0) throw NotBound("gardener_residual: orbit is not bound, H = " + std::to_string(h));
    const Vec3 t = reflect_in_tangent(sys, state);
    return norm(t - state.r) + norm(state.r) - (-sys.k / h);
}

/// Orbital ellipse derived from one bound state: 2a = -k/H,
/// 2c = |K|/(m|H|), b = sqrt(a^2 - c^2), foci at the force center and at
/// K/(mH).
struct EllipseGeometry {
    double a;
    double b;
    double c;
    Vec3 focus1; // force center
    Vec3 focus2; // second focus
    Vec3 center;
    double eccentricity;
    double period;
};

inline EllipseGeometry ellipse_geometry(const KeplerSystem& sys, const OrbitState& state) {
    const double h = energy(sys, state);
    if (h >= 0.0) throw NotBound("ellipse_geometry: orbit is not bound, H = " + std::to_string(h));
    const Vec3 l = angular_momentum(state, sys.m);
    if (norm_squared(l) == 0.0) throw DegenerateOrbit("ellipse_geometry: radial orbit (L = 0)");

    const Vec3 lrl = lrl_vector(sys, state);
    const double a = -sys.k / (2.0 * h);
    double c = norm(lrl) / (2.0 * sys.m * std::abs(h));
    Vec3 focus2 = lrl / (sys.m * h);
    // Near-circular tie-break: below |K| = 1e-12 k m the periapsis direction
    // is numerical noise, so the orbit is reported as an exact circle.
    if (norm(lrl) < 1e-12 * sys.k * sys.m) {
        c = 0.0;
        focus2 = Vec3{0.0, 0.0, 0.0};
    }
    const double b = std::sqrt(std::max(a * a - c * c, 0.0));
    return EllipseGeometry{a,
                           b,
                           c,
                           Vec3{0.0, 0.0, 0.0},
                           focus2,
                           focus2 * 0.5,
                           c / a,
                           analytic_period(sys, a)};
}

/// Residual of the polar conic relation r (1 + e cos(theta)) - L^2/(m k),
/// with theta measured from the periapsis direction K. For K = 0 the relation
/// degenerates to r - L^2/(m k).
inline double polar_conic_residual(const KeplerSystem& sys, const OrbitState& state) {
    const double h = energy(sys, state);
    if (h >= 0.0) {
        throw NotBound("polar_conic_residual: orbit is not bound, H = " + std::to_string(h));
    }
    const double r = norm(state.r);
    const Vec3 l = angular_momentum(state, sys.m);
    const Vec3 lrl = lrl_vector(sys, state);
    const double semi_latus = norm_squared(l) / (sys.m * sys.k);
    const double k_mag = norm(lrl);
    if (k_mag == 0.0) return r - semi_latus;
    const double e = k_mag / (sys.m * sys.k);
    const double cos_theta = dot(state.r, lrl) / (r * k_mag);
    return r * (1.0 + e * cos_theta) - semi_latus;
}

struct ThirdLawEntry {
    double a;
    double period;
    double ratio; // T^2 / a^3
};

/// Integrates each bound state, measures its period by angle accumulation and
/// returns T^2/a^3 per orbit; all ratios agree with 4 pi^2 m / k. Orbits are
/// independent, so they are evaluated concurrently.
inline std::vector<ThirdLawEntry> third_law_ratios(const KeplerSystem& sys,
                                                   std::span<const OrbitState> states) {
    auto evaluate = [&sys](const OrbitState& state) {
        const double a = semi_major_axis(sys, state); // throws NotBound for H >= 0
        const double dt = default_step(sys, state);
        const double t_est = analytic_period(sys, a);
        const auto n_steps = static_cast<std::size_t>(std::ceil(1.25 * t_est / dt));
        const Trajectory traj = integrate(sys, OrbitState(state), dt, n_steps, Integrator::rk4);
        const double period = measure_period(traj);
        return ThirdLawEntry{a, period, period * period / (a * a * a)};
    };

    std::vector<std::future<ThirdLawEntry>> futures;
    futures.reserve(states.size());
    for (const OrbitState& state : states) {
        futures.push_back(std::async(std::launch::async, evaluate, state));
    }
    std::vector<ThirdLawEntry> entries;
    entries.reserve(states.size());
    for (auto& f : futures) entries.push_back(f.get());
    return entries;
}

} // namespace kepler
