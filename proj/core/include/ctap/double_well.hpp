#pragma once

namespace ctap {

// Eigenvalue doublet of the piecewise-harmonic double well
//   V(y) = 1/2 (|y| - d/2)^2   (scaled units)
// for one band. Energies are nu + 1/2; the even member always lies below
// the odd one, and both indices tend to band_n as the wells separate.
struct WellDoublet {
    double separation_d;
    int band_n;
    double nu_even;
    double nu_odd;
    double tunneling_J;      // (nu_odd - nu_even) / 2, clamped >= 0
    double site_energy_eps;  // (nu_even + nu_odd) / 2 + 1/2
};

// Solves the even/odd matching conditions at the well midpoint,
// D'_nu(-d/sqrt(2)) = 0 and D_nu(-d/sqrt(2)) = 0, for band_n in {0, 1}.
// Roots are refined to |dnu| <= 1e-13.
//
// Throws bracket_error when the band has fewer matching roots than its
// index requires (band unresolvable at this separation), convergence_error
// if the underlying special-function evaluation fails, and
// std::invalid_argument outside d in [0, 40*sqrt(2)] or band_n in {0, 1}.
WellDoublet double_well_doublet(double separation_d, int band_n);

}  // namespace ctap
