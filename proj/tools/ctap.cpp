#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ctap/experiments.hpp"
#include "ctap/run_config.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Three-trap adiabatic-transfer experiments: reduced-model tables, "
                 "grid simulations and parameter sweeps, all emitted as CSV."};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int workers = 1;
    std::vector<std::string> overrides;
    app.add_option("--config", config_path, "Run configuration file (key = value lines)")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "Output directory (default: output.dir from the config)");
    app.add_option("--workers", workers, "Parallel workers for sweep points (default 1)")
        ->check(CLI::PositiveNumber);
    app.add_option("--override", overrides,
                   "Config override as key=value, repeatable, applied after --config");

    auto sub = [&](const char* name, const char* desc) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->fallthrough();
        return s;
    };
    sub("pulse-sequence",
        "Tables over t: trap distances, band tunneling rates, mixing angle, eigenvalue triplet");
    sub("site-energies", "Table over t: band site energies and their difference");
    sub("sweep-tf", "Grid run per t_f: final angular momentum, populations, model prediction, "
                    "snapshots at extrema and sign changes");
    sub("sweep-dmin", "Nested t_f sweep per d_min: angular-momentum oscillation period");
    sub("sweep-nl", "Nested t_f sweep per nonlinearity: oscillation amplitude and offset");
    sub("run-single", "One grid run: observable time series and final-state snapshot");
    sub("print-defaults", "Print the default configuration and exit");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("print-defaults")) {
            std::fputs(ctap::serialize_config(ctap::default_config()).c_str(), stdout);
            return 0;
        }
        ctap::RunConfig cfg =
            config_path.empty() ? ctap::default_config() : ctap::load_config_file(config_path);
        for (const auto& ov : overrides) ctap::apply_override(cfg, ov);
        ctap::validate_config(cfg);

        ctap::ExperimentContext ctx;
        ctx.config = cfg;
        ctx.out_dir = out_dir.empty() ? cfg.output_dir : out_dir;
        ctx.workers = workers;

        if (app.got_subcommand("pulse-sequence")) return ctap::cmd_pulse_sequence(ctx);
        if (app.got_subcommand("site-energies")) return ctap::cmd_site_energies(ctx);
        if (app.got_subcommand("sweep-tf")) return ctap::cmd_sweep_tf(ctx);
        if (app.got_subcommand("sweep-dmin")) return ctap::cmd_sweep_dmin(ctx);
        if (app.got_subcommand("sweep-nl")) return ctap::cmd_sweep_nl(ctx);
        if (app.got_subcommand("run-single")) return ctap::cmd_run_single(ctx);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
