#pragma once

// Assembles the full verification battery for one configuration: conserved
// drift, the reflection theorem, the gardener corollary, the hodograph
// circle, the scaling identities, the polar conic relation, the third law
// and the two-center acceleration theorem. Each check carries its measured
// residual and the tolerance it is held to.

#include <cmath>
#include <string>
#include <vector>

#include "kepler/conserved.hpp"
#include "kepler/dynamics.hpp"
#include "kepler/euclid.hpp"
#include "kepler/hodograph.hpp"
#include "kepler/newton.hpp"
#include "kepler/vec.hpp"

namespace kepler {

struct CheckRow {
    std::string name;
    double measured;
    double tolerance;
    bool pass;
};

struct VerificationReport {
    std::vector<CheckRow> rows;
    bool all_pass = true;

    void add(std::string name, double measured, double tolerance) {
        const bool pass = measured <= tolerance;
        all_pass = all_pass && pass;
        rows.push_back({std::move(name), measured, tolerance, pass});
    }
};

/// Runs every suite on the given orbit (plus fixed third-law and two-center
/// families) and returns the residual table. All tolerances are relative to
/// the natural scale of each identity.
inline VerificationReport run_verification(const KeplerSystem& sys, const OrbitState& state0) {
    VerificationReport report;

    const double dt = default_step(sys, state0);
    const double t_orbit = analytic_period(sys, semi_major_axis(sys, state0));
    const auto n_steps = static_cast<std::size_t>(std::ceil(10.0 * t_orbit / dt));
    const Trajectory traj = integrate(sys, state0, dt, n_steps, Integrator::rk4);

    const DriftReport drift = drift_report(traj);
    report.add("conserved-drift/H", drift.max_rel_dH, 1e-8);
    report.add("conserved-drift/L", drift.max_rel_dL, 1e-8);
    report.add("conserved-drift/K", drift.max_rel_dK, 1e-8);

    const double two_a = 2.0 * semi_major_axis(sys, state0);
    const Vec3 focus0 = second_focus(sys, state0);
    double reflection = 0.0, gardener = 0.0, focus_drift = 0.0, conic = 0.0;
    for (const auto& sample : traj.samples) {
        const Vec3 t_point = reflect_in_tangent(sys, sample.state);
        reflection = std::max(reflection, norm(t_point - second_focus(sys, sample.state)));
        gardener = std::max(gardener, std::abs(gardener_residual(sys, sample.state)));
        focus_drift = std::max(focus_drift, norm(second_focus(sys, sample.state) - focus0));
        conic = std::max(conic, std::abs(polar_conic_residual(sys, sample.state)));
    }
    report.add("reflection-theorem", reflection / two_a, 1e-9);
    report.add("gardener-corollary", gardener / two_a, 1e-9);
    report.add("second-focus-constancy", focus_drift / two_a, 1e-8);
    report.add("polar-conic", conic / (0.5 * two_a), 1e-9);

    const double radius = hodograph_radius(sys, state0);
    const Vec3 center = hodograph_center(sys, state0);
    const PlaneFrame frame = plane_frame(angular_momentum(state0, sys.m));
    std::vector<Vec3> vels;
    vels.reserve(traj.size());
    double membership = 0.0;
    for (const auto& sample : traj.samples) {
        vels.push_back(sample.state.v);
        membership = std::max(membership, std::abs(norm(sample.state.v - center) - radius));
    }
    const HodographFit fit = fit_circle(vels, frame);
    report.add("hodograph-fit/center", norm(fit.center - center) / radius, 1e-7);
    report.add("hodograph-fit/radius", std::abs(fit.radius - radius) / radius, 1e-7);
    report.add("hodograph-membership", membership / radius, 1e-9);
    report.add("hodograph-recentred", hodograph_centering_residual(sys, traj), 1e-9);
    report.add("hodograph-tangency", tangency_residual(sys, traj), 1e-9);
    report.add("scaling-identities", ellipse_scaling_residual(sys, state0), 1e-12);

    {
        std::vector<OrbitState> family;
        for (double a : {0.5, 1.0, 2.0}) {
            const double r_apo = a * 1.3; // eccentricity 0.3, apoapsis start
            family.emplace_back(Vec3{r_apo, 0, 0},
                                Vec3{0, std::sqrt(sys.k / sys.m * 0.7 / r_apo), 0});
        }
        const auto entries = third_law_ratios(sys, family);
        const double expected = 4.0 * std::numbers::pi * std::numbers::pi * sys.m / sys.k;
        double worst = 0.0;
        for (const auto& entry : entries) {
            worst = std::max(worst, std::abs(entry.ratio / expected - 1.0));
        }
        report.add("third-law", worst, 1e-4);
    }

    {
        const CenteredEllipse ell = make_ellipse_xy(1.0, std::sqrt(0.75));
        const std::size_t n = 4096;
        double intercept = 0.0, lemmas = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double t = two_pi * static_cast<double>(i) / static_cast<double>(n);
            const Vec3 r = harmonic_position(ell, t);
            const Vec3 e_point = center_parallel_intercept(ell, t);
            const Vec3 f_point = focus_parallel_intercept(ell, t);
            intercept = std::max(intercept, std::abs(norm(e_point - r) - ell.a));
            lemmas = std::max(lemmas, std::abs(norm(ell.focus_primary - e_point) -
                                               norm(e_point - f_point)));
            lemmas = std::max(lemmas,
                              std::abs(norm(f_point - r) - norm(ell.focus_secondary - r)));
        }
        report.add("two-center/intercept", intercept / ell.a, 1e-10);
        report.add("two-center/lemmas", lemmas / ell.a, 1e-10);
        report.add("two-center/ratio", acceleration_ratio_residual(ell, n), 1e-4);
        const InverseSquareCheck inv = inverse_square_check(ell, n);
        report.add("inverse-square/spread", inv.q_spread, 1e-4);
        report.add("inverse-square/direction", inv.max_direction_angle, 1e-6 * two_pi);
    }

    return report;
}

} // namespace kepler
