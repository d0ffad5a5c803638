#pragma once

#include <string>

#include "ctap/grid.hpp"
#include "ctap/split_step.hpp"
#include "ctap/trajectory.hpp"

namespace ctap {

// One sweep dimension; parameter is empty for single runs, or one of
// "t_f", "d_min", "nonlinearity_U". d_min and nonlinearity_U sweeps run a
// nested t_f sweep per value (period / amplitude extraction needs the
// whole oscillation), described by the inner_* window.
struct SweepBlock {
    std::string parameter;
    double start = 0.0;
    double stop = 0.0;
    int count = 0;
    double inner_start = 2000.0;
    double inner_stop = 2400.0;
    int inner_count = 41;
};

// Flat, fully deterministic experiment description. Every field has a
// default, so a config file holding only a sweep block is valid. The
// key = value serialization round-trips losslessly (%.17g).
struct RunConfig {
    double t_f = 300.0;
    double d_max = 7.0;
    double d_min = 2.0;
    double overlap_fraction = 0.85;
    double ramp_fraction = 0.391;
    double dwell_fraction = 0.05;
    std::string ramp = "sin2";  // or "linear_smoothed"

    int nx = 64;
    int ny = 256;
    double lx = 6.0;
    double ly = 16.0;

    double dt = 5e-4;
    double nonlinearity_U = 0.0;
    int record_stride = 500;
    int schedule_samples = 801;

    SweepBlock sweep;
    std::string output_dir = ".";
};

RunConfig default_config();
std::string serialize_config(const RunConfig& c);

// Parses key = value lines ('#' comments, blank lines ignored). Unknown
// keys or malformed values throw std::invalid_argument (fail-fast).
RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);

// Applies one "key=value" override in the same key space as the file.
void apply_override(RunConfig& c, const std::string& assignment);

// Full validation of ranges and cross-field constraints; throws
// std::invalid_argument with the offending key in the message.
void validate_config(const RunConfig& c);

TrajectoryPlan make_plan(const RunConfig& c);
Grid2D make_grid(const RunConfig& c);
SimConfig make_sim_config(const RunConfig& c);

}  // namespace ctap
