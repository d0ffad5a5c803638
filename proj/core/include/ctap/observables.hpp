#pragma once

#include <array>
#include <vector>

#include "ctap/grid.hpp"

namespace ctap {

// One row per recorded instant (or per sweep point): values holds the
// time / sweep parameter. Population columns sum to the norm entry.
struct ObservableSeries {
    std::vector<double> values;
    std::vector<double> Lz;
    std::vector<std::array<double, 3>> populations;  // left / middle / right
    std::vector<double> norm;
    std::vector<double> energy;
};

// <L_z> = Im Int psi* (x d_y - (y - about_y) d_x) psi, derivatives taken
// spectrally (one forward + two inverse transforms). The overload without
// about_y measures about the y-centroid of |psi|^2, which reproduces the
// +-1 circulation limits whichever trap holds the atom.
double angular_momentum(const GridField& f, double about_y);
double angular_momentum(const GridField& f);

double density_centroid_y(const GridField& f);

// |psi|^2 integrated over y-bands split at the midpoints between adjacent
// trap centers (full x range). Centers must be sorted ascending.
std::array<double, 3> region_populations(const GridField& f,
                                         const std::array<double, 3>& trap_centers_y);

// Period of the Lz-vs-parameter oscillation from mean-subtracted zero
// crossings (linear interpolation; period = 2 * mean crossing interval,
// uncertainty = 2 * stdev). Throws std::invalid_argument with fewer than
// 3 crossings.
struct PeriodEstimate {
    double period;
    double uncertainty;
    int crossings;
};
PeriodEstimate oscillation_period(const ObservableSeries& sweep);

}  // namespace ctap
