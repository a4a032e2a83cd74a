#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include <kepler/newton.hpp>
#include <kepler/vec.hpp>

using namespace kepler;

namespace {

double semi_minor(double a, double ecc) { return a * std::sqrt(1.0 - ecc * ecc); }

} // namespace

TEST_CASE("centered ellipse construction") {
    const CenteredEllipse ell = make_ellipse_xy(2.0, 1.0);
    CHECK(ell.a == 2.0);
    CHECK(ell.b == 1.0);
    const double c = std::sqrt(3.0);
    CHECK(norm(ell.focus_primary - Vec3{-c, 0, 0}) <= 1e-15);
    CHECK(norm(ell.focus_secondary - Vec3{c, 0, 0}) <= 1e-15);

    CHECK_THROWS_AS(make_ellipse_xy(1.0, 2.0), InvalidArgument);
    CHECK_THROWS_AS(CenteredEllipse(Vec3{}, Vec3{1, 0, 0}, Vec3{0.1, 0.5, 0}), InvalidArgument);
}

TEST_CASE("harmonic motion on the ellipse") {
    const CenteredEllipse ell = make_ellipse_xy(1.0, semi_minor(1.0, 0.5), Vec3{0.3, -0.2, 0});
    CHECK(norm(harmonic_position(ell, 0.0) - (ell.center + ell.u_axis)) <= 1e-15);
    CHECK(norm(harmonic_position(ell, std::numbers::pi / 2) - (ell.center + ell.w_axis)) <= 1e-14);

    // Acceleration equals center - r: central differences converge to it.
    // h = 1e-4 keeps the O(h^2) truncation above the 1/h^2 rounding noise.
    const double h = 1e-4;
    for (double t : {0.3, 1.9, 4.4}) {
        const Vec3 fd = (harmonic_position(ell, t + h) - 2.0 * harmonic_position(ell, t) +
                         harmonic_position(ell, t - h)) /
                        (h * h);
        CHECK(norm(fd - (ell.center - harmonic_position(ell, t))) <= 1e-6);
    }

    // Areal speed about the center is a*b/2 at every parameter.
    for (double t : {0.0, 0.7, 2.5, 5.1}) {
        const Vec3 rel = harmonic_position(ell, t) - ell.center;
        const double areal = 0.5 * norm(cross(rel, harmonic_velocity(ell, t)));
        CHECK(areal == Catch::Approx(0.5 * ell.a * ell.b).epsilon(1e-13));
    }
}

TEST_CASE("center-parallel intercept at the top of the minor axis") {
    const CenteredEllipse ell = make_ellipse_xy(1.0, std::sqrt(0.75));
    CHECK(norm(ell.focus_primary - Vec3{-0.5, 0, 0}) <= 1e-15);
    const Vec3 e_point = center_parallel_intercept(ell, std::numbers::pi / 2);
    CHECK(norm(e_point - Vec3{-0.5, 0, 0}) <= 1e-12);
    CHECK(norm(e_point - harmonic_position(ell, std::numbers::pi / 2)) ==
          Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the intercept distance equals the semi-major axis everywhere") {
    for (double ecc : {0.0, 0.25, 0.5, 0.75}) {
        const CenteredEllipse ell = make_ellipse_xy(1.0, semi_minor(1.0, ecc));
        for (int i = 0; i < 512; ++i) {
            const double t = two_pi * i / 512.0;
            const Vec3 e_point = center_parallel_intercept(ell, t);
            CHECK(std::abs(norm(e_point - harmonic_position(ell, t)) - ell.a) <= 1e-10 * ell.a);
        }
    }
}

TEST_CASE("circle limit: the intercept collapses to the center") {
    const CenteredEllipse circle = make_ellipse_xy(1.0, 1.0);
    for (int i = 0; i < 64; ++i) {
        const double t = two_pi * i / 64.0;
        CHECK(norm(center_parallel_intercept(circle, t) - circle.center) <= 1e-12);
    }
}

TEST_CASE("focus-parallel intercept satisfies both distance lemmas") {
    for (double ecc : {0.25, 0.5, 0.75}) {
        const CenteredEllipse ell = make_ellipse_xy(1.0, semi_minor(1.0, ecc));
        for (int i = 0; i < 512; ++i) {
            const double t = two_pi * i / 512.0 + 0.01;
            const Vec3 r = harmonic_position(ell, t);
            const Vec3 e_point = center_parallel_intercept(ell, t);
            const Vec3 f_point = focus_parallel_intercept(ell, t);
            const double de = norm(ell.focus_primary - e_point);
            const double ef = norm(e_point - f_point);
            const double fr = norm(f_point - r);
            const double br = norm(ell.focus_secondary - r);
            CHECK(std::abs(de - ef) <= 1e-10 * ell.a);
            CHECK(std::abs(fr - br) <= 1e-10 * ell.a);
        }
    }
}

TEST_CASE("parallel configuration is rejected") {
    const CenteredEllipse ell = make_ellipse_xy(1.0, 0.5);
    // At t = 0 the tangent is vertical; a second center on the vertical line
    // through r makes the chord parallel to it.
    CHECK_THROWS_AS(center_parallel_intercept(ell, 0.0, Vec3{1.0, 0.3, 0}), ParallelLines);
}

TEST_CASE("acceleration ratio formula") {
    const CenteredEllipse ell = make_ellipse_xy(1.0, std::sqrt(0.75));
    const Vec3 r = harmonic_position(ell, std::numbers::pi / 2);
    const Vec3 e_point = center_parallel_intercept(ell, std::numbers::pi / 2);
    CHECK(acceleration_ratio(r, ell.center, ell.focus_primary, e_point) ==
          Catch::Approx(1.0 / std::sqrt(0.75)).epsilon(1e-12));

    // Full symmetry of the circle: every distance is the radius.
    const CenteredEllipse circle = make_ellipse_xy(1.0, 1.0);
    const Vec3 rc = harmonic_position(circle, 0.4);
    const Vec3 ec = center_parallel_intercept(circle, 0.4);
    CHECK(acceleration_ratio(rc, circle.center, circle.focus_primary, ec) ==
          Catch::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(acceleration_ratio(r, r, ell.focus_primary, e_point),
                    DegenerateConfiguration);
}

TEST_CASE("equal-areal reparametrization preconditions") {
    const CenteredEllipse ell = make_ellipse_xy(1.0, 0.5);
    CHECK_THROWS_AS(equal_areal_reparam(ell, ell.focus_primary, 8), InvalidArgument);
    CHECK_THROWS_AS(equal_areal_reparam(ell, Vec3{0, 0.5, 0}, 64), DegenerateConfiguration);
    CHECK_THROWS_AS(equal_areal_reparam(ell, Vec3{2, 0, 0}, 64), DegenerateConfiguration);
    CHECK_THROWS_AS(equal_areal_reparam(ell, Vec3{0, 0, 0.5}, 64), InvalidArgument);
}

TEST_CASE("tabulated s(t) converges at fourth order") {
    // The full-period total is integrated exactly (the focal radius is a
    // trigonometric polynomial), so convergence is measured at an interior
    // node shared by all three grids.
    const CenteredEllipse ell = make_ellipse_xy(1.0, semi_minor(1.0, 0.5));
    auto quarter = [&](std::size_t n) {
        return equal_areal_reparam(ell, ell.focus_primary, n).s_at(std::numbers::pi / 2);
    };
    const double s1 = quarter(256), s2 = quarter(512), s3 = quarter(1024);
    const double ratio = (s1 - s2) / (s2 - s3);
    CHECK(ratio > 12.0);
    CHECK(ratio < 20.0);
}

TEST_CASE("reparametrized motion sweeps equal areas about the focus") {
    const CenteredEllipse ell = make_ellipse_xy(1.0, semi_minor(1.0, 0.5));
    const Vec3 d = ell.focus_primary;
    const ArealReparam reparam = equal_areal_reparam(ell, d, 256);
    const double target = 0.5 * ell.a * ell.b;

    // Areal speed about d in s-time via the chain rule, exact per node.
    for (std::size_t i = 0; i < reparam.t_nodes().size(); ++i) {
        const double t = reparam.t_nodes()[i];
        const double areal_t = 0.5 * norm(cross(harmonic_position(ell, t) - d,
                                                harmonic_velocity(ell, t)));
        const double areal_s = areal_t / equal_areal_slope(ell, d, t);
        CHECK(std::abs(areal_s - target) <= 1e-8 * target);
    }

    // And from finite differences on the uniform s-grid, at O(h^2).
    const std::size_t n = 1024;
    const ArealReparam fine = equal_areal_reparam(ell, d, n);
    const double h = fine.total() / static_cast<double>(n);
    std::vector<Vec3> pts(n);
    for (std::size_t j = 0; j < n; ++j) {
        pts[j] = harmonic_position(ell, fine.t_at(static_cast<double>(j) * h));
    }
    for (std::size_t j = 0; j < n; ++j) {
        const Vec3 dr = (pts[(j + 1) % n] - pts[(j + n - 1) % n]) / (2.0 * h);
        const double areal = 0.5 * norm(cross(pts[j] - d, dr));
        CHECK(std::abs(areal - target) <= 5e-4 * target);
    }
}

TEST_CASE("round trip between t and s") {
    const CenteredEllipse ell = make_ellipse_xy(1.0, semi_minor(1.0, 0.75));
    const ArealReparam reparam = equal_areal_reparam(ell, ell.focus_primary, 512);
    for (double s : {0.0, 0.37, 1.9, 4.0, reparam.total() * 0.999}) {
        const double t = reparam.t_at(s);
        CHECK(reparam.s_at(t) == Catch::Approx(s).margin(1e-12));
    }
    CHECK_THROWS_AS(reparam.t_at(-0.1), InvalidArgument);
    CHECK_THROWS_AS(reparam.t_at(reparam.total() + 0.1), InvalidArgument);
}

TEST_CASE("inverse-square check on the circle is exact") {
    const CenteredEllipse circle = make_ellipse_xy(1.0, 1.0);
    const InverseSquareCheck check = inverse_square_check(circle, 512);
    CHECK(check.q_spread <= 1e-10);
    CHECK(check.max_direction_angle <= 1e-6 * two_pi);
}

TEST_CASE("inverse-square law emerges from equal-areal motion about a focus") {
    const CenteredEllipse ell = make_ellipse_xy(1.0, semi_minor(1.0, 0.5));
    const InverseSquareCheck fine = inverse_square_check(ell, 4096);
    CHECK(fine.q_spread <= 1e-4);
    CHECK(fine.max_direction_angle <= 1e-6 * two_pi);

    // Spread decays at second order in the grid step.
    const double s1 = inverse_square_check(ell, 512).q_spread;
    const double s2 = inverse_square_check(ell, 1024).q_spread;
    CHECK(s1 / s2 > 3.0);
    CHECK(s1 / s2 < 5.0);
}

TEST_CASE("harmonic time distinguishes the Hooke law from inverse square") {
    // About the center in harmonic time, |d^2r/dt^2| / |r - c| is constant 1.
    const CenteredEllipse ell = make_ellipse_xy(1.0, semi_minor(1.0, 0.5));
    const std::size_t n = 1024;
    const double h = two_pi / static_cast<double>(n);
    std::vector<Vec3> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = harmonic_position(ell, i * h);
    for (std::size_t i = 0; i < n; ++i) {
        const Vec3 accel = (pts[(i + 1) % n] - 2.0 * pts[i] + pts[(i + n - 1) % n]) / (h * h);
        CHECK(norm(accel) / norm(pts[i] - ell.center) == Catch::Approx(1.0).margin(1e-3));
    }
}

TEST_CASE("finite-difference acceleration ratio matches the theorem") {
    const CenteredEllipse ell = make_ellipse_xy(1.0, semi_minor(1.0, 0.5));
    const double r1 = acceleration_ratio_residual(ell, 512);
    const double r2 = acceleration_ratio_residual(ell, 1024);
    CHECK(r1 / r2 > 3.0);
    CHECK(r1 / r2 < 5.0);
    CHECK(acceleration_ratio_residual(ell, 4096) <= 1e-4);
}

TEST_CASE("two-center samples expose consistent rows") {
    const CenteredEllipse ell = make_ellipse_xy(1.0, semi_minor(1.0, 0.5));
    const auto samples = two_center_samples(ell, 256);
    REQUIRE(samples.size() == 256);
    double q_mean = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i > 0) CHECK(samples[i].s > samples[i - 1].s);
        CHECK(samples[i].ratio_formula > 0.0);
        CHECK(samples[i].ratio_numeric ==
              Catch::Approx(samples[i].ratio_formula).epsilon(1e-3));
        q_mean += samples[i].q;
    }
    q_mean /= static_cast<double>(samples.size());
    // Q = |d^2r/ds^2| |r-d|^2 is the coupling constant a^3 of the
    // equivalent Kepler motion.
    CHECK(q_mean == Catch::Approx(ell.a * ell.a * ell.a).epsilon(1e-3));
}
