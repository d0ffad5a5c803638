#pragma once

#include <functional>
#include <span>
#include <vector>

namespace ctap {

// Lowest eigenvalues of H = -(1/2) d^2/dy^2 + V(y) on a hard-wall interval,
// discretized by the standard second-order three-point stencil.
//
// `potential` holds V at the n interior points of a uniform grid with spacing
// `grid_spacing` (walls half a stencil beyond each end sample carry psi = 0).
// Solves on the full grid and on the exact stride-2 and stride-4 subgrids,
// Richardson-extrapolates the h^2 error away, and checks that the two
// extrapolants agree to `tolerance` (refinement-doubling convergence test).
// Requires n % 4 == 3 so the subgrids share the walls exactly.
//
// Throws std::invalid_argument on a malformed grid and convergence_error
// (message carries the worst residual) if refinement has not converged.
std::vector<double> fd_eigensolve_1d(std::span<const double> potential, double grid_spacing,
                                     int k_lowest, double tolerance = 1e-8);

// Single-grid variant without the refinement check; exposed for tests and
// benchmarks that want the raw discrete operator.
std::vector<double> fd_eigenvalues_grid(std::span<const double> potential, double grid_spacing,
                                        int k_lowest);

// Convenience wrapper: samples V on [y_min, y_max] with n interior points
// (n % 4 == 3) and runs fd_eigensolve_1d.
std::vector<double> fd_eigensolve_on(const std::function<double(double)>& potential, double y_min,
                                     double y_max, int k_lowest, int n = 4095,
                                     double tolerance = 1e-8);

}  // namespace ctap
