#pragma once

// Test-only oracle: direct conic least squares on raw (x, y) samples.
// Deliberately independent of the library's ellipse formulas: it sees only
// point coordinates and solves the normal equations of
// A x^2 + B xy + C y^2 + D x + E y + 1 = 0.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace kepler::testing {

template <std::size_t N>
inline std::array<double, N> gauss_solve(std::array<std::array<double, N>, N> m,
                                         std::array<double, N> rhs) {
    for (std::size_t col = 0; col < N; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < N; ++row) {
            if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
        }
        if (m[pivot][col] == 0.0) throw std::runtime_error("gauss_solve: singular matrix");
        std::swap(m[pivot], m[col]);
        std::swap(rhs[pivot], rhs[col]);
        for (std::size_t row = col + 1; row < N; ++row) {
            const double f = m[row][col] / m[col][col];
            for (std::size_t c = col; c < N; ++c) m[row][c] -= f * m[col][c];
            rhs[row] -= f * rhs[col];
        }
    }
    std::array<double, N> x{};
    for (std::size_t row = N; row-- > 0;) {
        double acc = rhs[row];
        for (std::size_t c = row + 1; c < N; ++c) acc -= m[row][c] * x[c];
        x[row] = acc / m[row][row];
    }
    return x;
}

struct FittedEllipse {
    double a;  // semi-major
    double b;  // semi-minor
    double cx; // center, same plane coordinates as the input
    double cy;
};

inline FittedEllipse fit_ellipse_conic(std::span<const double> xs, std::span<const double> ys) {
    const std::size_t n = xs.size();
    if (n < 6 || ys.size() != n) throw std::runtime_error("fit_ellipse_conic: need >= 6 points");

    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sigma2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sigma2 += dx * dx + dy * dy;
    }
    const double sigma = std::sqrt(sigma2 / static_cast<double>(n));
    if (sigma == 0.0) throw std::runtime_error("fit_ellipse_conic: degenerate points");

    // Normal equations of the design rows (x^2, xy, y^2, x, y) = -1.
    std::array<std::array<double, 5>, 5> m{};
    std::array<double, 5> rhs{};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = (xs[i] - mx) / sigma;
        const double y = (ys[i] - my) / sigma;
        const std::array<double, 5> row{x * x, x * y, y * y, x, y};
        for (std::size_t a = 0; a < 5; ++a) {
            for (std::size_t b = 0; b < 5; ++b) m[a][b] += row[a] * row[b];
            rhs[a] -= row[a];
        }
    }
    const auto [ca, cb, cc, cd, ce] = gauss_solve<5>(m, rhs);

    // Conic center in normalized coordinates.
    const auto center = gauss_solve<2>({{{2 * ca, cb}, {cb, 2 * cc}}}, {-cd, -ce});
    const double f0 = ca * center[0] * center[0] + cb * center[0] * center[1] +
                      cc * center[1] * center[1] + cd * center[0] + ce * center[1] + 1.0;

    // Eigenvalues of the quadratic form [[A, B/2], [B/2, C]].
    const double tr = ca + cc;
    const double disc = std::sqrt((ca - cc) * (ca - cc) + cb * cb);
    const double l1 = 0.5 * (tr - disc);
    const double l2 = 0.5 * (tr + disc);
    const double q1 = -f0 / l1;
    const double q2 = -f0 / l2;
    if (!(q1 > 0.0) || !(q2 > 0.0)) throw std::runtime_error("fit_ellipse_conic: not an ellipse");

    return FittedEllipse{std::sqrt(std::max(q1, q2)) * sigma, std::sqrt(std::min(q1, q2)) * sigma,
                         center[0] * sigma + mx, center[1] * sigma + my};
}

} // namespace kepler::testing
