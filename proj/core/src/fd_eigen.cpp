#include "ctap/fd_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "ctap/errors.hpp"

namespace ctap {
namespace {

// Number of eigenvalues of the symmetric tridiagonal (diag d_i, uniform
// off-diagonal b) strictly below lambda, by Sturm sequence count.
int sturm_count(std::span<const double> diag, double b, double lambda) {
    const double b2 = b * b;
    const double tiny = 1e-300;
    int count = 0;
    // Factorization recurrence. A pivot at or below +tiny counts as
    // negative and is clamped to -tiny before propagating, so an exact
    // zero hit (uniform diagonals line bisection midpoints up with |b|)
    // neither divides by zero nor silently drops the sign change.
    double q = diag[0] - lambda;
    if (q <= tiny) {
        ++count;
        q = std::min(q, -tiny);
    }
    for (size_t i = 1; i < diag.size(); ++i) {
        q = (diag[i] - lambda) - b2 / q;
        if (q <= tiny) {
            ++count;
            q = std::min(q, -tiny);
        }
    }
    return count;
}

// k lowest eigenvalues by bisection on the Sturm count.
std::vector<double> sturm_lowest(std::span<const double> diag, double b, int k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double d : diag) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    lo -= 2.0 * std::abs(b);
    hi += 2.0 * std::abs(b);

    std::vector<double> out(k);
    for (int j = 0; j < k; ++j) {
        double a = lo, c = hi;
        // Smallest lambda with count(lambda) >= j+1.
        for (int it = 0; it < 100 && (c - a) > 1e-14 * (std::abs(a) + std::abs(c) + 1.0); ++it) {
            double m = 0.5 * (a + c);
            if (sturm_count(diag, b, m) >= j + 1)
                c = m;
            else
                a = m;
        }
        out[j] = 0.5 * (a + c);
    }
    return out;
}

std::vector<double> solve_stride(std::span<const double> potential, double h, int k, int stride) {
    const int n = static_cast<int>(potential.size());
    const double hs = h * stride;
    const double inv = 1.0 / (hs * hs);
    std::vector<double> diag;
    diag.reserve(n / stride + 1);
    for (int i = stride - 1; i < n; i += stride) diag.push_back(inv + potential[i]);
    return sturm_lowest(diag, -0.5 * inv, k);
}

}  // namespace

std::vector<double> fd_eigenvalues_grid(std::span<const double> potential, double grid_spacing,
                                        int k_lowest) {
    if (potential.size() < 3 || !(grid_spacing > 0.0))
        throw std::invalid_argument("fd_eigenvalues_grid: need >= 3 samples and positive spacing");
    if (k_lowest < 1 || static_cast<size_t>(k_lowest) > potential.size())
        throw std::invalid_argument("fd_eigenvalues_grid: k out of range");
    return solve_stride(potential, grid_spacing, k_lowest, 1);
}

std::vector<double> fd_eigensolve_1d(std::span<const double> potential, double grid_spacing,
                                     int k_lowest, double tolerance) {
    const int n = static_cast<int>(potential.size());
    if (n < 19 || n % 4 != 3)
        throw std::invalid_argument("fd_eigensolve_1d: need n >= 19 interior samples with n % 4 == 3");
    if (!(grid_spacing > 0.0)) throw std::invalid_argument("fd_eigensolve_1d: spacing must be positive");
    if (k_lowest < 1 || k_lowest > (n - 3) / 4)
        throw std::invalid_argument("fd_eigensolve_1d: k out of range for the coarsest subgrid");

    std::vector<double> f1 = solve_stride(potential, grid_spacing, k_lowest, 1);
    std::vector<double> f2 = solve_stride(potential, grid_spacing, k_lowest, 2);
    std::vector<double> f4 = solve_stride(potential, grid_spacing, k_lowest, 4);

    std::vector<double> out(k_lowest);
    double worst = 0.0;
    for (int j = 0; j < k_lowest; ++j) {
        double r1 = (4.0 * f1[j] - f2[j]) / 3.0;  // h^2 term removed
        double r2 = (4.0 * f2[j] - f4[j]) / 3.0;
        out[j] = r1;
        worst = std::max(worst, std::abs(r1 - r2) / std::max(1.0, std::abs(r1)));
    }
    if (worst > tolerance) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "fd_eigensolve_1d: refinement residual %.3e exceeds tolerance %.3e", worst,
                      tolerance);
        throw convergence_error(buf);
    }
    return out;
}

std::vector<double> fd_eigensolve_on(const std::function<double(double)>& potential, double y_min,
                                     double y_max, int k_lowest, int n, double tolerance) {
    if (!(y_max > y_min)) throw std::invalid_argument("fd_eigensolve_on: empty interval");
    const double h = (y_max - y_min) / (n + 1);
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = potential(y_min + h * (i + 1));
    return fd_eigensolve_1d(v, h, k_lowest, tolerance);
}

}  // namespace ctap
