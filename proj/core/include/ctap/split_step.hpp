#pragma once

#include <complex>
#include <vector>

#include "ctap/grid.hpp"
#include "ctap/observables.hpp"
#include "ctap/spectral.hpp"
#include "ctap/trajectory.hpp"

namespace ctap {

// Grid run parameters. freeze_traps pins the potential to its t = 0 shape
// (all distances at d_max), used by the static consistency checks.
struct SimConfig {
    TrajectoryPlan plan;
    double dt = 5e-4;
    double nonlinearity_U = 0.0;
    int record_stride = 500;
    bool freeze_traps = false;
};

// Normalized single-circulation-quantum state in the trap at center_y:
//   phi_1(x) phi_0(y') + i exp(-i theta) phi_0(x) phi_1(y'),
// y' = y - center_y. Carries <L_z> = cos(theta) about its center.
// Throws std::invalid_argument when the trap sits closer than 6 length
// units to the domain edge.
GridField initial_vortex(const Grid2D& grid, double center_y, double phase_theta = 0.0);

// Strang splitting: half potential kick, full spectral kinetic step, half
// potential kick; the nonlinear term uses the in-place density, which a
// pure phase kick leaves unchanged, so merged kicks are exact.
class SplitStepper {
public:
    SplitStepper(const Grid2D& grid, double dt, double U);

    void load(const GridField& f);
    void store(GridField& f) const;

    void half_kick(const PotentialSnapshot& snap);
    void full_kick(const PotentialSnapshot& snap);
    void kinetic(long step_index);  // throws convergence_error on NaN
    void step(const PotentialSnapshot& snap, long step_index = -1);

    double edge_density() const;  // max |psi|^2 over the boundary ring
    const Grid2D& grid() const { return grid_; }

private:
    void kick(const PotentialSnapshot& snap, double tau,
              const std::vector<std::complex<double>>& xphase);

    Grid2D grid_;
    double dt_, U_;
    Spectral2D fft_;
    std::vector<std::complex<double>> kphase_;  // kinetic phase, 1/N folded in
    std::vector<std::complex<double>> xphase_half_, xphase_full_;
    std::vector<std::complex<double>> yphase_;  // per-kick scratch
};

// Single Strang step of a standalone field (convenience for tests).
void step(GridField& f, const PotentialSnapshot& snap, double dt, double U);

struct RunResult {
    GridField final_field;
    ObservableSeries series;
    double max_edge_density = 0.0;
};

// Steps the field through [0, t_f], rebuilding the potential every step
// from the plan, recording observables every record_stride steps and at
// both ends. Throws std::invalid_argument for an unnormalized initial
// state or dt * (max kinetic eigenvalue) >= 1.
RunResult run_ctap(const SimConfig& config, const GridField& initial);

// mu = <-nabla^2/2 + V + U |psi|^2>.
double chemical_potential(const GridField& f, const PotentialSnapshot& snap, double U);

// Gross-Pitaevskii energy functional <-nabla^2/2 + V> + (U/2) Int |psi|^4,
// the quantity conserved by static-potential evolution.
double total_energy(const GridField& f, const PotentialSnapshot& snap, double U);

}  // namespace ctap
