#pragma once

// CSV and plain-text report writers. Every number is printed with %.17g
// (17 significant digits, round-trip exact) and LF line endings, so output
// for identical inputs is byte-identical across runs.

#include <cstdio>
#include <ostream>
#include <span>
#include <string>

#include "kepler/conserved.hpp"
#include "kepler/dynamics.hpp"
#include "kepler/euclid.hpp"
#include "kepler/hodograph.hpp"
#include "kepler/newton.hpp"
#include "kepler/vec.hpp"

namespace kepler {

inline std::string fmt17(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string fmt17(const Vec3& v) {
    return fmt17(v.x) + "," + fmt17(v.y) + "," + fmt17(v.z);
}

inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,rx,ry,rz,vx,vy,vz\n";
    for (const auto& sample : traj.samples) {
        out << fmt17(sample.t) << ',' << fmt17(sample.state.r) << ',' << fmt17(sample.state.v)
            << '\n';
    }
}

inline void write_conserved_csv(std::ostream& out, const Trajectory& traj) {
    out << "t,H,Lx,Ly,Lz,Kx,Ky,Kz\n";
    for (const auto& sample : traj.samples) {
        const ConservedSet c = conserved_set(traj.system, sample.state);
        out << fmt17(sample.t) << ',' << fmt17(c.H) << ',' << fmt17(c.L) << ',' << fmt17(c.K)
            << '\n';
    }
}

/// Velocity samples keyed by the unwrapped position angle.
inline void write_hodograph_csv(std::ostream& out, const Trajectory& traj) {
    const Vec3 l0 = angular_momentum(traj.front().state, traj.system.m);
    const PlaneFrame frame = plane_frame(l0);
    const std::vector<double> theta = accumulated_angles(traj, frame, frame.u);
    out << "theta,vx,vy,vz\n";
    for (std::size_t i = 0; i < traj.size(); ++i) {
        out << fmt17(theta[i]) << ',' << fmt17(traj[i].state.v) << '\n';
    }
}

/// Per-sample residuals of the geometric identities along a trajectory.
inline void write_residuals_csv(std::ostream& out, const Trajectory& traj) {
    const KeplerSystem& sys = traj.system;
    const Vec3 focus0 = second_focus(sys, traj.front().state);
    out << "t,gardener,polar_conic,t_drift\n";
    for (const auto& sample : traj.samples) {
        out << fmt17(sample.t) << ',' << fmt17(gardener_residual(sys, sample.state)) << ','
            << fmt17(polar_conic_residual(sys, sample.state)) << ','
            << fmt17(norm(second_focus(sys, sample.state) - focus0)) << '\n';
    }
}

inline void write_newton_csv(std::ostream& out, std::span<const TwoCenterSample> samples,
                             const CenteredEllipse& ell) {
    out << "t,s,rx,ry,ratio_formula,ratio_numeric,Q\n";
    for (const TwoCenterSample& smp : samples) {
        const Vec3 rel = smp.r - ell.center;
        out << fmt17(smp.t) << ',' << fmt17(smp.s) << ',' << fmt17(dot(rel, ell.unit_u)) << ','
            << fmt17(dot(rel, ell.unit_w)) << ',' << fmt17(smp.ratio_formula) << ','
            << fmt17(smp.ratio_numeric) << ',' << fmt17(smp.q) << '\n';
    }
}

/// key=value block of the derived orbit geometry and conserved quantities.
inline void write_geometry_report(std::ostream& out, const KeplerSystem& sys,
                                  const OrbitState& state) {
    const EllipseGeometry geo = ellipse_geometry(sys, state);
    const ConservedSet c = conserved_set(sys, state);
    out << "a=" << fmt17(geo.a) << '\n'
        << "b=" << fmt17(geo.b) << '\n'
        << "c=" << fmt17(geo.c) << '\n'
        << "e=" << fmt17(geo.eccentricity) << '\n'
        << "T=" << fmt17(geo.period) << '\n'
        << "H=" << fmt17(c.H) << '\n'
        << "L=" << fmt17(norm(c.L)) << '\n'
        << "|K|=" << fmt17(norm(c.K)) << '\n'
        << "K=" << fmt17(c.K) << '\n'
        << "t=" << fmt17(geo.focus2) << '\n';
}

} // namespace kepler
