#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "kepler/dynamics.hpp"
#include "kepler/errors.hpp"
#include "kepler/vec.hpp"

namespace kepler {

inline Vec3 angular_momentum(const OrbitState& state, double m) {
    return cross(state.r, state.v * m);
}

/// Laplace-Runge-Lenz vector K = p x L - k m r / |r|. Conserved for every
/// energy; |K| = m k e and K points along the major axis toward periapsis.
inline Vec3 lrl_vector(const KeplerSystem& sys, const OrbitState& state) {
    const double r = norm(state.r);
    if (r == 0.0) throw SingularPosition("lrl_vector: position at the force center");
    const Vec3 p = state.v * sys.m;
    return cross(p, cross(state.r, p)) - state.r * (sys.k * sys.m / r);
}

/// The second focus of the orbital ellipse, K/(m H). Defined for bound states.
inline Vec3 second_focus(const KeplerSystem& sys, const OrbitState& state) {
    const double h = energy(sys, state);
    if (h >= 0.0) throw NotBound("second_focus: orbit is not bound, H = " + std::to_string(h));
    return lrl_vector(sys, state) / (sys.m * h);
}

/// All conserved quantities of a state. The second focus is present iff H < 0.
struct ConservedSet {
    double H;
    Vec3 L;
    Vec3 K;
    std::optional<Vec3> second_focus;
};

inline ConservedSet conserved_set(const KeplerSystem& sys, const OrbitState& state) {
    ConservedSet c{energy(sys, state), angular_momentum(state, sys.m), lrl_vector(sys, state), {}};
    if (c.H < 0.0) c.second_focus = c.K / (sys.m * c.H);

    // K lies in the orbital plane and satisfies K^2 = 2 m H L^2 + (m k)^2.
    const double kl = std::abs(dot(c.K, c.L));
    if (kl > 1e-12 * norm(c.K) * norm(c.L)) {
        throw Error("conserved_set: K not perpendicular to L, K.L = " + std::to_string(kl));
    }
    const double k2 = norm_squared(c.K);
    const double identity = k2 - (2.0 * sys.m * c.H * norm_squared(c.L) + sys.m * sys.m * sys.k * sys.k);
    if (std::abs(identity) > 1e-10 * std::max(k2, sys.m * sys.m * sys.k * sys.k)) {
        throw Error("conserved_set: K^2 identity violated by " + std::to_string(identity));
    }
    return c;
}

/// Worst relative drift of H, L, K along a trajectory, each normalized by
/// max(|Q(0)|, k*m) so circular orbits (K = 0) do not divide by zero.
struct DriftReport {
    double max_rel_dH = 0.0;
    double max_rel_dL = 0.0;
    double max_rel_dK = 0.0;

    struct Row {
        double t;
        double rel_dH;
        double rel_dL;
        double rel_dK;
    };
    std::vector<Row> series; // filled only on request
};

inline DriftReport drift_report(const Trajectory& traj, bool keep_series = false) {
    if (traj.samples.empty()) throw InvalidArgument("drift_report: empty trajectory");
    const KeplerSystem& sys = traj.system;

    const double h0 = energy(sys, traj.front().state);
    const Vec3 l0 = angular_momentum(traj.front().state, sys.m);
    const Vec3 k0 = lrl_vector(sys, traj.front().state);
    const double floor = sys.k * sys.m;
    const double h_scale = std::max(std::abs(h0), floor);
    const double l_scale = std::max(norm(l0), floor);
    const double k_scale = std::max(norm(k0), floor);

    DriftReport report;
    if (keep_series) report.series.reserve(traj.size());
    for (const auto& sample : traj.samples) {
        const double dh = std::abs(energy(sys, sample.state) - h0) / h_scale;
        const double dl = norm(angular_momentum(sample.state, sys.m) - l0) / l_scale;
        const double dk = norm(lrl_vector(sys, sample.state) - k0) / k_scale;
        report.max_rel_dH = std::max(report.max_rel_dH, dh);
        report.max_rel_dL = std::max(report.max_rel_dL, dl);
        report.max_rel_dK = std::max(report.max_rel_dK, dk);
        if (keep_series) report.series.push_back({sample.t, dh, dl, dk});
    }
    return report;
}

} // namespace kepler
