#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "kepler/errors.hpp"
#include "kepler/vec.hpp"

namespace kepler {

/// Attractive inverse-square system: force -k r / |r|^3 on a particle of mass m.
struct KeplerSystem {
    double m;
    double k;

    KeplerSystem(double mass, double coupling) : m(mass), k(coupling) {
        if (!(std::isfinite(m) && m > 0.0)) {
            throw InvalidArgument("KeplerSystem: mass must be positive, got " + std::to_string(mass));
        }
        if (!(std::isfinite(k) && k > 0.0)) {
            throw InvalidArgument("KeplerSystem: coupling must be positive, got " +
                                  std::to_string(coupling));
        }
    }
};

/// Instantaneous phase-space point. The origin is a singularity of the field,
/// so |r| > 0 is enforced on construction.
struct OrbitState {
    Vec3 r;
    Vec3 v;

    OrbitState(const Vec3& position, const Vec3& velocity) : r(position), v(velocity) {
        if (norm_squared(r) == 0.0) {
            throw SingularPosition("OrbitState: position coincides with the force center");
        }
    }
};

enum class Integrator { rk4, verlet };

struct Trajectory {
    struct Sample {
        double t;
        OrbitState state;
    };

    KeplerSystem system;
    double dt;
    std::vector<Sample> samples;

    std::size_t size() const { return samples.size(); }
    const Sample& operator[](std::size_t i) const { return samples[i]; }
    const Sample& front() const { return samples.front(); }
    const Sample& back() const { return samples.back(); }
};

inline Vec3 acceleration(const KeplerSystem& sys, const Vec3& r) {
    const double r2 = norm_squared(r);
    if (r2 == 0.0) throw SingularPosition("acceleration: evaluated at the force center");
    return r * (-sys.k / (sys.m * r2 * std::sqrt(r2)));
}

/// One classical fourth-order Runge-Kutta step of (r' = v, v' = a(r)).
inline OrbitState step_rk4(const KeplerSystem& sys, const OrbitState& state, double dt) {
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw InvalidArgument("step_rk4: dt must be positive, got " + std::to_string(dt));
    }
    const Vec3 k1r = state.v;
    const Vec3 k1v = acceleration(sys, state.r);
    const Vec3 k2r = state.v + k1v * (dt / 2.0);
    const Vec3 k2v = acceleration(sys, state.r + k1r * (dt / 2.0));
    const Vec3 k3r = state.v + k2v * (dt / 2.0);
    const Vec3 k3v = acceleration(sys, state.r + k2r * (dt / 2.0));
    const Vec3 k4r = state.v + k3v * dt;
    const Vec3 k4v = acceleration(sys, state.r + k3r * dt);
    return OrbitState(state.r + (k1r + 2.0 * (k2r + k3r) + k4r) * (dt / 6.0),
                      state.v + (k1v + 2.0 * (k2v + k3v) + k4v) * (dt / 6.0));
}

/// One velocity-Verlet step. Symplectic and time-reversible; dt may be
/// negative (stepping backwards undoes a forward step).
inline OrbitState step_verlet(const KeplerSystem& sys, const OrbitState& state, double dt) {
    if (!std::isfinite(dt)) throw InvalidArgument("step_verlet: dt not finite");
    const Vec3 v_half = state.v + acceleration(sys, state.r) * (dt / 2.0);
    const Vec3 r_new = state.r + v_half * dt;
    return OrbitState(r_new, v_half + acceleration(sys, r_new) * (dt / 2.0));
}

inline double energy(const KeplerSystem& sys, const OrbitState& state);

/// Steps the state n_steps times, invoking observer(index, time, state) for
/// every sample including the initial one. Aborts near the singularity:
/// bound motion closer to the center than 1e-9 * (-k/H) is treated as a
/// collision.
template <typename Observer>
OrbitState propagate(const KeplerSystem& sys, const OrbitState& state0, double dt,
                     std::size_t n_steps, Integrator method, Observer&& observer) {
    if (!(std::isfinite(dt) && dt > 0.0)) {
        throw InvalidArgument("propagate: dt must be positive, got " + std::to_string(dt));
    }
    if (n_steps < 1) throw InvalidArgument("propagate: n_steps must be >= 1");

    const double h0 = energy(sys, state0);
    const double guard = h0 < 0.0 ? 1e-9 * (-sys.k / h0) : 0.0;

    OrbitState state = state0;
    observer(std::size_t{0}, 0.0, state);
    for (std::size_t i = 1; i <= n_steps; ++i) {
        state = method == Integrator::rk4 ? step_rk4(sys, state, dt) : step_verlet(sys, state, dt);
        if (norm(state.r) < guard) {
            throw SingularPosition("propagate: close approach at step " + std::to_string(i) +
                                   ", |r| = " + std::to_string(norm(state.r)));
        }
        observer(i, static_cast<double>(i) * dt, state);
    }
    return state;
}

inline Trajectory integrate(const KeplerSystem& sys, const OrbitState& state0, double dt,
                            std::size_t n_steps, Integrator method = Integrator::rk4) {
    Trajectory traj{sys, dt, {}};
    traj.samples.reserve(n_steps + 1);
    propagate(sys, state0, dt, n_steps, method,
              [&](std::size_t, double t, const OrbitState& s) { traj.samples.push_back({t, s}); });
    return traj;
}

/// Orbital period for semi-major axis a: T = 2*pi*sqrt(m a^3 / k).
inline double analytic_period(const KeplerSystem& sys, double a) {
    if (!(std::isfinite(a) && a > 0.0)) {
        throw InvalidArgument("analytic_period: semi-major axis must be positive, got " +
                              std::to_string(a));
    }
    return two_pi * std::sqrt(sys.m * a * a * a / sys.k);
}

inline double energy(const KeplerSystem& sys, const OrbitState& state) {
    const double r = norm(state.r);
    if (r == 0.0) throw SingularPosition("energy: position at the force center");
    return 0.5 * sys.m * norm_squared(state.v) - sys.k / r;
}

/// a = -k/(2H); defined for bound states only.
inline double semi_major_axis(const KeplerSystem& sys, const OrbitState& state) {
    const double h = energy(sys, state);
    if (h >= 0.0) {
        throw NotBound("semi_major_axis: orbit is not bound, H = " + std::to_string(h));
    }
    return -sys.k / (2.0 * h);
}

/// Default integration step: one ten-thousandth of the period estimated from
/// the state's energy.
inline double default_step(const KeplerSystem& sys, const OrbitState& state) {
    return analytic_period(sys, semi_major_axis(sys, state)) / 1e4;
}

/// Unwrapped in-plane angle of the position at every sample, measured from
/// origin_dir counterclockwise about frame.axis. The first entry lies in
/// [0, 2*pi); later entries accumulate continuously across the wrap.
inline std::vector<double> accumulated_angles(const Trajectory& traj, const PlaneFrame& frame,
                                              const Vec3& origin_dir) {
    std::vector<double> angles;
    angles.reserve(traj.size());
    double prev = angle_in_plane(traj.front().state.r, frame, origin_dir);
    double acc = prev;
    angles.push_back(acc);
    for (std::size_t i = 1; i < traj.size(); ++i) {
        const double ang = angle_in_plane(traj[i].state.r, frame, origin_dir);
        double delta = ang - prev;
        if (delta <= -std::numbers::pi) delta += two_pi;
        if (delta > std::numbers::pi) delta -= two_pi;
        prev = ang;
        acc += delta;
        angles.push_back(acc);
    }
    return angles;
}

/// Period measured as the time for the accumulated in-plane angle of r to
/// advance by 2*pi, with linear interpolation on the final step. Robust for
/// near-circular orbits where periapsis passage is ill-conditioned.
inline double measure_period(const Trajectory& traj) {
    if (traj.size() < 2) throw InvalidArgument("measure_period: trajectory has fewer than 2 samples");
    const KeplerSystem& sys = traj.system;
    const OrbitState& s0 = traj.front().state;

    const double h = energy(sys, s0);
    if (h >= 0.0) throw NotBound("measure_period: orbit is not bound, H = " + std::to_string(h));
    const Vec3 l0 = cross(s0.r, s0.v * sys.m);
    const PlaneFrame frame = plane_frame(l0);

    double prev_angle = angle_in_plane(s0.r, frame, frame.u);
    double accumulated = 0.0;
    for (std::size_t i = 1; i < traj.size(); ++i) {
        const double ang = angle_in_plane(traj[i].state.r, frame, frame.u);
        double delta = ang - prev_angle;
        if (delta <= -std::numbers::pi) delta += two_pi;
        if (delta > std::numbers::pi) delta -= two_pi;
        prev_angle = ang;
        const double next = accumulated + delta;
        if (next >= two_pi) {
            return traj[i - 1].t + traj.dt * (two_pi - accumulated) / delta;
        }
        accumulated = next;
    }
    throw InsufficientCoverage("measure_period: accumulated angle " + std::to_string(accumulated) +
                               " rad never reached 2*pi");
}

} // namespace kepler
