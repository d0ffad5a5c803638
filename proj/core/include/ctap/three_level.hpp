#pragma once

#include <array>
#include <complex>
#include <vector>

#include "ctap/trajectory.hpp"

namespace ctap {

// Amplitudes over the localized basis (|L>, |M>, |R>) for one band.
struct ThreeLevelState {
    std::array<std::complex<double>, 3> amplitudes;
    int band_n = 0;
};

// Sampled couplings and site energy for one band. Arrays share length;
// times run strictly increasing from 0 to t_f; J values are non-negative.
struct CouplingSchedule {
    std::vector<double> times;
    std::vector<double> J_LM;
    std::vector<double> J_MR;
    std::vector<double> eps;
    int band_n = 0;

    double t_f() const { return times.empty() ? 0.0 : times.back(); }
};

void validate_schedule(const CouplingSchedule& s);

// atan2(J_LM, J_MR) in [0, pi/2] for non-negative couplings: 0 while only
// the distal M-R coupling is on (state parked in |L>), pi/2 once only L-M
// remains. Throws std::invalid_argument when both couplings are zero.
double mixing_angle(double J_LM, double J_MR);

// (cos th, 0, -sin th): annihilated by the coupling part of the
// Hamiltonian for th = mixing_angle(J_LM, J_MR), so its energy is the bare
// site energy for any coupling pair.
ThreeLevelState dark_state(double theta_mix);

struct EigenTriplet {
    double lower;
    double dark;
    double upper;
};

// Instantaneous spectrum {eps - r, eps, eps + r}, r = hypot(J_LM, J_MR).
std::vector<EigenTriplet> eigenvalue_flow(const CouplingSchedule& s);

struct ThreeLevelSeries {
    std::vector<double> times;
    std::vector<std::array<double, 3>> populations;  // |a_L|^2, |a_M|^2, |a_R|^2
};

struct PropagationResult {
    ThreeLevelState final_state;
    ThreeLevelSeries series;
    double norm_drift;  // |1 - final norm|
};

// Integrates i da/dt = H(t) a with classical RK4, fixed step
// <= min(1e-3, t_f/1e4), couplings linearly interpolated from the
// schedule. Throws convergence_error if the norm drifts beyond 1e-6.
PropagationResult propagate(const CouplingSchedule& s, const ThreeLevelState& initial);

struct PhaseRecord {
    double t_f;
    double gamma;      // global phase: 3/2 t_f + integral of eps0
    double theta_rel;  // relative phase: -t_f + integral of (eps1 - eps0)
    double predicted_Lz;
};

// Trapezoid quadrature of the two phase functionals over a shared time
// grid. The sign of theta_rel is fixed so static unit-frequency traps
// (eps1 - eps0 = 1 throughout) give theta_rel = 0 and Lz = +1.
PhaseRecord phase_functionals(const CouplingSchedule& band0, const CouplingSchedule& band1);

struct BandSchedules {
    CouplingSchedule band0;
    CouplingSchedule band1;
};

// Samples the reduced-model inputs along a trajectory plan: J_n from the
// double-well doublet at the instantaneous pair separations, eps_n as the
// band-n triplet mean of the six lowest eigenvalues of the instantaneous
// three-well potential. The sampled shape depends on the plan only through
// the fractions (not t_f), so a plan rescaled in time reuses it.
BandSchedules build_band_schedules(const TrajectoryPlan& plan, int samples = 801);

}  // namespace ctap
