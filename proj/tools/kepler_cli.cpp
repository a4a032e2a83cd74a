// Command-line front end: orbit simulation, verification suites and
// CSV/SVG/plain-text reports.
//
//   kepler simulate  --r0 1,0,0 --v0 0,0.8,0 --periods 3 --out traj.csv
//   kepler verify
//   kepler hodograph --svg figure.svg
//   kepler newton    --a 1 --b 0.6 --n 4096 --out newton.csv
//   kepler kepler3   --orbit 1,0,0,0,1,0 --orbit 2.6,0,0,0,0.47,0
//
// Exit codes: 0 success, 1 named precondition/verification failure,
// 2 malformed flags. Reports go to stdout, diagnostics to stderr.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <kepler/conserved.hpp>
#include <kepler/dynamics.hpp>
#include <kepler/euclid.hpp>
#include <kepler/hodograph.hpp>
#include <kepler/io.hpp>
#include <kepler/newton.hpp>
#include <kepler/svg.hpp>
#include <kepler/verify.hpp>

namespace {

struct Options {
    std::vector<double> r0{1.0, 0.0, 0.0};
    std::vector<double> v0{0.0, 1.0, 0.0};
    double m = 1.0;
    double k = 1.0;
    std::string integrator = "rk4";
    std::string dt = "auto";
    double periods = 1.0;
};

kepler::Vec3 to_vec(const std::vector<double>& v) { return {v[0], v[1], v[2]}; }

struct Run {
    kepler::KeplerSystem sys;
    kepler::OrbitState state;
    kepler::Integrator method;
    double dt;
    double period;
};

// Validates every option against the module preconditions before any
// computation starts.
Run make_run(const Options& opt) {
    using namespace kepler;
    const KeplerSystem sys(opt.m, opt.k);
    const OrbitState state(to_vec(opt.r0), to_vec(opt.v0));
    if (!(opt.periods > 0.0) || !std::isfinite(opt.periods)) {
        throw InvalidArgument("periods must be positive, got " + std::to_string(opt.periods));
    }
    Integrator method;
    if (opt.integrator == "rk4") method = Integrator::rk4;
    else if (opt.integrator == "verlet") method = Integrator::verlet;
    else throw InvalidArgument("integrator must be rk4 or verlet, got '" + opt.integrator + "'");

    const double period = analytic_period(sys, semi_major_axis(sys, state));
    double dt = 0.0;
    if (opt.dt == "auto") {
        dt = period / 1e4;
    } else {
        const char* begin = opt.dt.data();
        const char* end = begin + opt.dt.size();
        const auto [ptr, ec] = std::from_chars(begin, end, dt);
        if (ec != std::errc{} || ptr != end || !(dt > 0.0) || !std::isfinite(dt)) {
            throw InvalidArgument("dt must be a positive number or 'auto', got '" + opt.dt + "'");
        }
    }
    return Run{sys, state, method, dt, period};
}

kepler::Trajectory run_trajectory(const Run& run, double periods) {
    const auto n = static_cast<std::size_t>(std::ceil(periods * run.period / run.dt));
    return kepler::integrate(run.sys, run.state, run.dt, n, run.method);
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw kepler::InvalidArgument("cannot open output file '" + path + "'");
    return out;
}

int cmd_simulate(const Options& opt, const std::string& out_path,
                 const std::string& conserved_path, const std::string& residuals_path) {
    const Run run = make_run(opt);
    const kepler::Trajectory traj = run_trajectory(run, opt.periods);

    auto out = open_output(out_path);
    kepler::write_trajectory_csv(out, traj);
    if (!conserved_path.empty()) {
        auto cons = open_output(conserved_path);
        kepler::write_conserved_csv(cons, traj);
    }
    if (!residuals_path.empty()) {
        auto res = open_output(residuals_path);
        kepler::write_residuals_csv(res, traj);
    }
    kepler::write_geometry_report(std::cout, run.sys, run.state);
    std::cout << "samples=" << traj.size() << '\n' << "dt=" << kepler::fmt17(run.dt) << '\n';
    return 0;
}

int cmd_verify(const Options& opt) {
    const Run run = make_run(opt);
    const kepler::VerificationReport report = kepler::run_verification(run.sys, run.state);

    std::printf("%-26s %14s %12s   %s\n", "check", "measured", "tolerance", "result");
    for (const kepler::CheckRow& row : report.rows) {
        std::printf("%-26s %14.3e %12.1e   %s\n", row.name.c_str(), row.measured, row.tolerance,
                    row.pass ? "PASS" : "FAIL");
    }
    std::printf("%zu/%zu checks passed\n",
                static_cast<std::size_t>(
                    std::count_if(report.rows.begin(), report.rows.end(),
                                  [](const kepler::CheckRow& r) { return r.pass; })),
                report.rows.size());
    return report.all_pass ? 0 : 1;
}

int cmd_hodograph(const Options& opt, const std::string& out_path, const std::string& svg_path) {
    const Run run = make_run(opt);
    const kepler::Trajectory traj = run_trajectory(run, opt.periods);

    auto out = open_output(out_path);
    kepler::write_hodograph_csv(out, traj);
    if (!svg_path.empty()) {
        auto svg = open_output(svg_path);
        kepler::write_orbit_figure(svg, traj);
    }
    const kepler::Vec3 center = kepler::hodograph_center(run.sys, run.state);
    std::cout << "center=" << kepler::fmt17(center) << '\n'
              << "radius=" << kepler::fmt17(kepler::hodograph_radius(run.sys, run.state)) << '\n';
    const auto frame = kepler::plane_frame(kepler::angular_momentum(run.state, run.sys.m));
    std::vector<kepler::Vec3> vels;
    vels.reserve(traj.size());
    for (const auto& sample : traj.samples) vels.push_back(sample.state.v);
    const kepler::HodographFit fit = kepler::fit_circle(vels, frame);
    std::cout << "fit_center=" << kepler::fmt17(fit.center) << '\n'
              << "fit_radius=" << kepler::fmt17(fit.radius) << '\n'
              << "fit_max_residual=" << kepler::fmt17(fit.max_residual) << '\n';
    return 0;
}

int cmd_newton(double a, double b, std::size_t n, const std::string& out_path) {
    const kepler::CenteredEllipse ell = kepler::make_ellipse_xy(a, b);
    const auto samples = kepler::two_center_samples(ell, n);

    auto out = open_output(out_path);
    kepler::write_newton_csv(out, samples, ell);

    double intercept = 0.0, lemma_de_ef = 0.0, lemma_fr_br = 0.0, ratio = 0.0;
    for (const auto& smp : samples) {
        intercept = std::max(intercept, std::abs(norm(smp.e_point - smp.r) - ell.a));
        lemma_de_ef = std::max(lemma_de_ef, std::abs(norm(ell.focus_primary - smp.e_point) -
                                                     norm(smp.e_point - smp.f_point)));
        lemma_fr_br = std::max(lemma_fr_br, std::abs(norm(smp.f_point - smp.r) -
                                                     norm(ell.focus_secondary - smp.r)));
        ratio = std::max(ratio, std::abs(smp.ratio_numeric / smp.ratio_formula - 1.0));
    }
    const kepler::InverseSquareCheck inv = kepler::inverse_square_check(ell, n);
    std::cout << "samples=" << samples.size() << '\n'
              << "max_intercept_residual=" << kepler::fmt17(intercept) << '\n'
              << "max_lemma_de_ef=" << kepler::fmt17(lemma_de_ef) << '\n'
              << "max_lemma_fr_br=" << kepler::fmt17(lemma_fr_br) << '\n'
              << "max_ratio_residual=" << kepler::fmt17(ratio) << '\n'
              << "q_spread=" << kepler::fmt17(inv.q_spread) << '\n'
              << "max_direction_angle=" << kepler::fmt17(inv.max_direction_angle) << '\n';
    return 0;
}

int cmd_kepler3(const Options& opt, const std::vector<std::vector<double>>& orbits) {
    using namespace kepler;
    const KeplerSystem sys(opt.m, opt.k);

    std::vector<OrbitState> states;
    if (orbits.empty()) {
        for (double a : {0.5, 1.0, 2.0}) {
            states.emplace_back(Vec3{a, 0, 0}, Vec3{0, std::sqrt(sys.k / (sys.m * a)), 0});
        }
    } else {
        for (const auto& entry : orbits) {
            states.emplace_back(Vec3{entry[0], entry[1], entry[2]},
                                Vec3{entry[3], entry[4], entry[5]});
        }
    }

    const auto entries = third_law_ratios(sys, states);
    double mean = 0.0;
    for (const auto& e : entries) {
        std::cout << "a=" << fmt17(e.a) << " T=" << fmt17(e.period) << " ratio=" << fmt17(e.ratio)
                  << '\n';
        mean += e.ratio;
    }
    mean /= static_cast<double>(entries.size());
    double spread = 0.0;
    for (const auto& e : entries) spread = std::max(spread, std::abs(e.ratio / mean - 1.0));
    const double expected = 4.0 * std::numbers::pi * std::numbers::pi * sys.m / sys.k;
    std::cout << "common_ratio=" << fmt17(mean) << '\n'
              << "expected=" << fmt17(expected) << '\n'
              << "max_rel_spread=" << fmt17(spread) << '\n';
    const bool pass = spread <= 1e-4 && std::abs(mean / expected - 1.0) <= 1e-4;
    std::cout << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kepler two-body problem: simulation and geometric verification"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Read options from a key=value file");

    Options opt;
    app.add_option("--r0", opt.r0, "Initial position, comma-separated triple")
        ->delimiter(',')
        ->expected(3);
    app.add_option("--v0", opt.v0, "Initial velocity, comma-separated triple")
        ->delimiter(',')
        ->expected(3);
    app.add_option("--m", opt.m, "Particle mass (> 0)");
    app.add_option("--k", opt.k, "Attractive coupling constant (> 0)");
    app.add_option("--integrator", opt.integrator, "rk4 or verlet");
    app.add_option("--dt", opt.dt, "Step size, or 'auto' for T/1e4");
    app.add_option("--periods", opt.periods, "Number of orbital periods to integrate");

    auto* simulate = app.add_subcommand("simulate", "Integrate one orbit and report its geometry");
    std::string sim_out = "trajectory.csv", conserved_out, residuals_out;
    simulate->add_option("--out", sim_out, "Trajectory CSV path");
    simulate->add_option("--conserved", conserved_out, "Also write conserved-quantity CSV");
    simulate->add_option("--residuals", residuals_out, "Also write per-sample residual CSV");

    auto* verify = app.add_subcommand("verify", "Run every verification suite");

    auto* hodograph = app.add_subcommand("hodograph", "Write the velocity-space circle data");
    std::string hodo_out = "hodograph.csv", svg_out;
    hodograph->add_option("--out", hodo_out, "Hodograph CSV path");
    hodograph->add_option("--svg", svg_out, "Also write an SVG figure");

    auto* newton = app.add_subcommand("newton", "Two-center areal-speed checks on an ellipse");
    double ell_a = 1.0, ell_b = std::sqrt(0.75);
    std::size_t newton_n = 4096;
    std::string newton_out = "newton.csv";
    newton->add_option("--a", ell_a, "Semi-major axis");
    newton->add_option("--b", ell_b, "Semi-minor axis");
    newton->add_option("--n", newton_n, "Number of samples (>= 16)");
    newton->add_option("--out", newton_out, "Two-center CSV path");

    auto* kepler3 = app.add_subcommand("kepler3", "Measure T^2/a^3 across orbits");
    std::vector<std::vector<double>> orbits;
    kepler3->add_option("--orbit", orbits, "One orbit as rx,ry,rz,vx,vy,vz (repeatable)")
        ->delimiter(',')
        ->expected(-6);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(opt, sim_out, conserved_out, residuals_out);
        if (verify->parsed()) return cmd_verify(opt);
        if (hodograph->parsed()) return cmd_hodograph(opt, hodo_out, svg_out);
        if (newton->parsed()) return cmd_newton(ell_a, ell_b, newton_n, newton_out);
        if (kepler3->parsed()) return cmd_kepler3(opt, orbits);
    } catch (const kepler::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
