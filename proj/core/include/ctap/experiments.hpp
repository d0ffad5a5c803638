#pragma once

#include <array>
#include <string>
#include <vector>

#include "ctap/grid.hpp"
#include "ctap/observables.hpp"
#include "ctap/run_config.hpp"

namespace ctap {

// Shared command context: validated configuration, resolved output
// directory, worker count for sweep points.
struct ExperimentContext {
    RunConfig config;
    std::string out_dir = ".";
    int workers = 1;
};

// One t_f sweep point. On failure the numeric fields are NaN, ok is
// false and status carries the reason; the sweep itself continues.
struct SweepTfRow {
    double t_f = 0.0;
    double Lz = 0.0;
    std::array<double, 3> populations{};
    double norm = 0.0;
    double energy = 0.0;
    double predicted_Lz = 0.0;
    bool ok = true;
    std::string status = "ok";
};

struct SweepTfResult {
    std::vector<SweepTfRow> rows;
    // Final field per point (amplitudes empty for failed points), kept so
    // snapshot exports need no re-runs.
    std::vector<GridField> finals;
};

// One grid simulation per t_f in the sweep window, plus the reduced-model
// prediction cos(theta_rel) for the same values. Band schedules are
// sampled once (the sampled shape is t_f-independent) and rescaled in
// time per point. Requires sweep.parameter == "t_f".
SweepTfResult sweep_over_tf(const RunConfig& config, int workers);

// Row indices worth exporting as snapshots: local |L_z| extrema and the
// rows flanking sign changes, successful rows only.
std::vector<int> snapshot_export_indices(const std::vector<SweepTfRow>& rows);

// Nested t_f sweep at one d_min, with the oscillation period of the
// resulting Lz(t_f) series.
struct DminOutcome {
    double d_min = 0.0;
    SweepTfResult inner;
    PeriodEstimate period{};
    bool ok = true;
    std::string status = "ok";
};
DminOutcome dmin_outcome(const RunConfig& base, double d_min, int workers);

// Nested t_f sweep at one nonlinearity, with the oscillation amplitude
// and offset of Lz(t_f) and the chemical-potential diagnostics of the
// initial state.
struct NlOutcome {
    double U = 0.0;
    SweepTfResult inner;
    double mu_total = 0.0;
    double mu_shift = 0.0;  // U * Int |psi|^4, the interaction part of mu
    double amplitude = 0.0;
    double offset = 0.0;
    bool ok = true;
    std::string status = "ok";
};
NlOutcome nl_outcome(const RunConfig& base, double U, int workers);

// Interaction shifts U * Int |psi_0|^4 for every sweep value; throws
// std::invalid_argument if any exceeds the weak-interaction bound 0.1.
std::vector<double> nl_weak_regime_shifts(const RunConfig& config);

std::vector<double> sweep_values(const SweepBlock& sweep);

int cmd_pulse_sequence(const ExperimentContext& ctx);
int cmd_site_energies(const ExperimentContext& ctx);
int cmd_sweep_tf(const ExperimentContext& ctx);
int cmd_sweep_dmin(const ExperimentContext& ctx);
int cmd_sweep_nl(const ExperimentContext& ctx);
int cmd_run_single(const ExperimentContext& ctx);

}  // namespace ctap
