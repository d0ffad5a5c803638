#pragma once

#include <array>

namespace ctap {

enum class RampShape { sin2, linear_smoothed };

// Counter-intuitive trap sequence: the middle-right distance closes first,
// the left-middle one follows after a delay of (1 - overlap) excursion
// windows, where one window spans ramp + dwell + ramp. Fractions are of
// t_f and the delayed pair is centered in [0, t_f].
// Default shape: long ramps with a short dwell and strong overlap keep the
// mixing-angle sweep slow where the bright-dark gap is smallest, and the
// first excited band (which rides close to the pairwise two-well doublets
// near d_min) clears its avoided crossings without Landau-Zener loss.
// Tuned on the 2D grid at d_min = 2: over 99% of the norm arrives in the
// right region at t_f = 300, and the residual phase error of the two-mode
// model decays as ~125/t_f.
struct TrajectoryPlan {
    double t_f = 300.0;
    double d_max = 7.0;
    double d_min = 2.0;
    double overlap_fraction = 0.85;
    double ramp_fraction = 0.391;
    double dwell_fraction = 0.05;
    RampShape ramp = RampShape::sin2;
};

struct PairDistances {
    double d_LM;
    double d_MR;
};

// Throws std::invalid_argument unless 0 < d_min < d_max, fractions are in
// range, and the delayed pulse pair fits inside [0, t_f].
void validate_plan(const TrajectoryPlan& plan);

// C1 pulse pair; d_LM(0) = d_MR(0) = d_LM(t_f) = d_MR(t_f) = d_max.
// Throws std::invalid_argument for t outside [0, t_f] (tiny integrator
// roundoff past the ends is clamped).
PairDistances plan_distances(const TrajectoryPlan& plan, double t);

// Three-trap potential at fixed time: V(x, y) = x^2/2 + W(y) with
// W(y) = min_i (y - y_i)^2 / 2. Middle trap pinned at y = 0.
struct PotentialSnapshot {
    std::array<double, 3> trap_centers_y;

    double well(double y) const {
        double best = y - trap_centers_y[0];
        best *= best;
        for (int i = 1; i < 3; ++i) {
            double u = y - trap_centers_y[i];
            u *= u;
            if (u < best) best = u;
        }
        return 0.5 * best;
    }
    double operator()(double x, double y) const { return 0.5 * x * x + well(y); }
};

PotentialSnapshot snapshot(const TrajectoryPlan& plan, double t);

}  // namespace ctap
