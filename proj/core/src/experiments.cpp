#include "ctap/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <set>
#include <stdexcept>
#include <thread>

#include "ctap/csv.hpp"
#include "ctap/split_step.hpp"
#include "ctap/three_level.hpp"
#include "ctap/trajectory.hpp"

namespace fs = std::filesystem;

namespace ctap {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Work-stealing by atomic index; fn must not throw (each point catches
// its own failures). All writes land in pre-sized slots, so the results
// are identical for any worker count.
template <class Fn>
void parallel_for(int n, int workers, Fn&& fn) {
    std::atomic<int> next{0};
    auto drain = [&] {
        for (int i; (i = next.fetch_add(1)) < n;) fn(i);
    };
    workers = std::clamp(workers, 1, n > 0 ? n : 1);
    if (workers == 1) {
        drain();
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(drain);
    for (auto& t : pool) t.join();
}

// The sampled schedule shape is t_f-independent, so one set of samples
// (built at t_f = 1) serves every sweep point after time rescaling.
CouplingSchedule rescale_times(CouplingSchedule s, double t_f) {
    const double scale = t_f / s.times.back();
    for (double& t : s.times) t *= scale;
    s.times.back() = t_f;
    return s;
}

std::string joined(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

double quartic_integral(const GridField& f) {
    double acc = 0.0;
    for (const auto& a : f.amplitudes) {
        const double d = std::norm(a);
        acc += d * d;
    }
    return acc * f.grid.cell();
}

void write_tf_rows(const std::string& path, const std::vector<SweepTfRow>& rows) {
    CsvWriter w(path, {"t_f", "Lz", "pop_L", "pop_M", "pop_R", "norm", "energy",
                       "predicted_Lz", "status"});
    for (const auto& r : rows)
        w.row({r.t_f, r.Lz, r.populations[0], r.populations[1], r.populations[2], r.norm,
               r.energy, r.predicted_Lz},
              r.status);
}

RunConfig nested_tf_config(const RunConfig& base) {
    RunConfig c = base;
    c.sweep.parameter = "t_f";
    c.sweep.start = base.sweep.inner_start;
    c.sweep.stop = base.sweep.inner_stop;
    c.sweep.count = base.sweep.inner_count;
    return c;
}

}  // namespace

std::vector<double> sweep_values(const SweepBlock& sweep) {
    std::vector<double> v(sweep.count);
    for (int i = 0; i < sweep.count; ++i)
        v[i] = sweep.start + (sweep.stop - sweep.start) * i / (sweep.count - 1);
    v.back() = sweep.stop;
    return v;
}

SweepTfResult sweep_over_tf(const RunConfig& config, int workers) {
    validate_config(config);
    if (config.sweep.parameter != "t_f")
        throw std::invalid_argument("sweep_over_tf: sweep.parameter must be t_f");
    const std::vector<double> values = sweep_values(config.sweep);
    for (double v : values) {  // fail fast before launching anything
        TrajectoryPlan p = make_plan(config);
        p.t_f = v;
        validate_plan(p);
    }

    TrajectoryPlan shape = make_plan(config);
    shape.t_f = 1.0;
    const BandSchedules sched = build_band_schedules(shape, config.schedule_samples);
    const Grid2D grid = make_grid(config);

    SweepTfResult out;
    out.rows.resize(values.size());
    out.finals.resize(values.size());
    parallel_for(static_cast<int>(values.size()), workers, [&](int i) {
        SweepTfRow& row = out.rows[i];
        row.t_f = values[i];
        row.predicted_Lz = phase_functionals(rescale_times(sched.band0, values[i]),
                                             rescale_times(sched.band1, values[i]))
                               .predicted_Lz;
        try {
            RunConfig pc = config;
            pc.t_f = values[i];
            const SimConfig sc = make_sim_config(pc);
            const GridField start = initial_vortex(grid, -pc.d_max);
            RunResult r = run_ctap(sc, start);
            row.Lz = angular_momentum(r.final_field);
            row.populations =
                region_populations(r.final_field, snapshot(sc.plan, pc.t_f).trap_centers_y);
            row.norm = r.series.norm.back();
            row.energy = r.series.energy.back();
            out.finals[i] = std::move(r.final_field);
        } catch (const std::exception& e) {
            row.Lz = row.norm = row.energy = kNaN;
            row.populations = {kNaN, kNaN, kNaN};
            row.ok = false;
            row.status = e.what();
        }
    });
    return out;
}

std::vector<int> snapshot_export_indices(const std::vector<SweepTfRow>& rows) {
    const int n = static_cast<int>(rows.size());
    std::set<int> keep;
    auto prev_ok = [&](int i) {
        for (--i; i >= 0; --i)
            if (rows[i].ok) return i;
        return -1;
    };
    auto next_ok = [&](int i) {
        for (++i; i < n; ++i)
            if (rows[i].ok) return i;
        return n;
    };
    for (int i = 0; i < n; ++i) {
        if (!rows[i].ok) continue;
        const int p = prev_ok(i), q = next_ok(i);
        if (p >= 0 && q < n) {
            const double a = rows[i].Lz - rows[p].Lz;
            const double b = rows[q].Lz - rows[i].Lz;
            if ((a >= 0.0 && b <= 0.0) || (a <= 0.0 && b >= 0.0)) keep.insert(i);
        }
        if (p >= 0 && (rows[p].Lz < 0.0) != (rows[i].Lz < 0.0))
            keep.insert(std::abs(rows[p].Lz) <= std::abs(rows[i].Lz) ? p : i);
    }
    return {keep.begin(), keep.end()};
}

DminOutcome dmin_outcome(const RunConfig& base, double d_min, int workers) {
    DminOutcome out;
    out.d_min = d_min;
    RunConfig inner = nested_tf_config(base);
    inner.d_min = d_min;
    out.inner = sweep_over_tf(inner, workers);
    ObservableSeries s;
    for (const auto& row : out.inner.rows)
        if (row.ok) {
            s.values.push_back(row.t_f);
            s.Lz.push_back(row.Lz);
        }
    try {
        out.period = oscillation_period(s);
    } catch (const std::exception& e) {
        out.period = {kNaN, kNaN, 0};
        out.ok = false;
        out.status = e.what();
    }
    return out;
}

NlOutcome nl_outcome(const RunConfig& base, double U, int workers) {
    NlOutcome out;
    out.U = U;
    RunConfig inner = nested_tf_config(base);
    inner.nonlinearity_U = U;

    const Grid2D grid = make_grid(inner);
    const GridField start = initial_vortex(grid, -inner.d_max);
    out.mu_shift = U * quartic_integral(start);
    out.mu_total = chemical_potential(start, snapshot(make_plan(inner), 0.0), U);

    out.inner = sweep_over_tf(inner, workers);
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    int good = 0;
    for (const auto& row : out.inner.rows)
        if (row.ok) {
            lo = std::min(lo, row.Lz);
            hi = std::max(hi, row.Lz);
            ++good;
        }
    if (good >= 2) {
        out.amplitude = 0.5 * (hi - lo);
        out.offset = 0.5 * (hi + lo);
    } else {
        out.amplitude = out.offset = kNaN;
        out.ok = false;
        out.status = "fewer than two successful sweep points";
    }
    return out;
}

std::vector<double> nl_weak_regime_shifts(const RunConfig& config) {
    validate_config(config);
    if (config.sweep.parameter != "nonlinearity_U")
        throw std::invalid_argument("nonlinearity sweep: sweep.parameter must be nonlinearity_U");
    const GridField start = initial_vortex(make_grid(config), -config.d_max);
    const double q4 = quartic_integral(start);
    std::vector<double> shifts;
    for (double U : sweep_values(config.sweep)) {
        const double s = U * q4;
        if (s > 0.1) {
            char msg[128];
            std::snprintf(msg, sizeof msg,
                          "nonlinearity sweep leaves the weak regime: U = %g gives "
                          "interaction shift %.3g > 0.1",
                          U, s);
            throw std::invalid_argument(msg);
        }
        shifts.push_back(s);
    }
    return shifts;
}

int cmd_pulse_sequence(const ExperimentContext& ctx) {
    const RunConfig& c = ctx.config;
    validate_config(c);
    fs::create_directories(ctx.out_dir);
    const TrajectoryPlan plan = make_plan(c);
    const BandSchedules sched = build_band_schedules(plan, c.schedule_samples);
    const auto& t = sched.band0.times;

    {
        CsvWriter w(joined(ctx.out_dir, "pulse_distances.csv"), {"t", "d_LM", "d_MR"});
        for (double ti : t) {
            const PairDistances d = plan_distances(plan, ti);
            w.row({ti, d.d_LM, d.d_MR});
        }
    }
    {
        CsvWriter w(joined(ctx.out_dir, "pulse_couplings.csv"),
                    {"t", "J0_LM", "J0_MR", "J1_LM", "J1_MR"});
        for (size_t i = 0; i < t.size(); ++i)
            w.row({t[i], sched.band0.J_LM[i], sched.band0.J_MR[i], sched.band1.J_LM[i],
                   sched.band1.J_MR[i]});
    }
    {
        CsvWriter w(joined(ctx.out_dir, "pulse_mixing_angle.csv"), {"t", "theta_mix"});
        for (size_t i = 0; i < t.size(); ++i)
            w.row({t[i], mixing_angle(sched.band0.J_LM[i], sched.band0.J_MR[i])});
    }
    {
        CsvWriter w(joined(ctx.out_dir, "pulse_eigenvalues.csv"),
                    {"t", "e_lower", "e_dark", "e_upper"});
        const auto flow = eigenvalue_flow(sched.band0);
        for (size_t i = 0; i < t.size(); ++i)
            w.row({t[i], flow[i].lower, flow[i].dark, flow[i].upper});
    }
    return 0;
}

int cmd_site_energies(const ExperimentContext& ctx) {
    const RunConfig& c = ctx.config;
    validate_config(c);
    fs::create_directories(ctx.out_dir);
    const BandSchedules sched = build_band_schedules(make_plan(c), c.schedule_samples);
    CsvWriter w(joined(ctx.out_dir, "site_energies.csv"),
                {"t", "eps0", "eps1", "eps0_minus_eps1"});
    for (size_t i = 0; i < sched.band0.times.size(); ++i)
        w.row({sched.band0.times[i], sched.band0.eps[i], sched.band1.eps[i],
               sched.band0.eps[i] - sched.band1.eps[i]});
    return 0;
}

int cmd_sweep_tf(const ExperimentContext& ctx) {
    const SweepTfResult res = sweep_over_tf(ctx.config, ctx.workers);
    fs::create_directories(ctx.out_dir);
    write_tf_rows(joined(ctx.out_dir, "sweep_tf.csv"), res.rows);
    for (int i : snapshot_export_indices(res.rows)) {
        char name[64];
        std::snprintf(name, sizeof name, "snapshot_tf_%.6g_density.csv", res.rows[i].t_f);
        write_density_csv(joined(ctx.out_dir, name), res.finals[i]);
        std::snprintf(name, sizeof name, "snapshot_tf_%.6g_phase.csv", res.rows[i].t_f);
        write_phase_csv(joined(ctx.out_dir, name), res.finals[i]);
    }
    return 0;
}

int cmd_sweep_dmin(const ExperimentContext& ctx) {
    const RunConfig& c = ctx.config;
    validate_config(c);
    if (c.sweep.parameter != "d_min")
        throw std::invalid_argument("sweep-dmin: sweep.parameter must be d_min");
    fs::create_directories(ctx.out_dir);
    CsvWriter w(joined(ctx.out_dir, "sweep_dmin.csv"),
                {"d_min", "period", "period_uncertainty", "crossings", "status"});
    for (double v : sweep_values(c.sweep)) {
        const DminOutcome o = dmin_outcome(c, v, ctx.workers);
        char name[64];
        std::snprintf(name, sizeof name, "sweep_dmin_%.6g_tf.csv", v);
        write_tf_rows(joined(ctx.out_dir, name), o.inner.rows);
        w.row({v, o.period.period, o.period.uncertainty,
               static_cast<double>(o.period.crossings)},
              o.status);
    }
    return 0;
}

int cmd_sweep_nl(const ExperimentContext& ctx) {
    const RunConfig& c = ctx.config;
    nl_weak_regime_shifts(c);  // fail fast before any simulation
    fs::create_directories(ctx.out_dir);
    CsvWriter w(joined(ctx.out_dir, "sweep_nl.csv"),
                {"U", "mu_total", "mu_shift", "amplitude", "offset", "status"});
    for (double v : sweep_values(c.sweep)) {
        const NlOutcome o = nl_outcome(c, v, ctx.workers);
        char name[64];
        std::snprintf(name, sizeof name, "sweep_nl_%.6g_tf.csv", v);
        write_tf_rows(joined(ctx.out_dir, name), o.inner.rows);
        w.row({v, o.mu_total, o.mu_shift, o.amplitude, o.offset}, o.status);
    }
    return 0;
}

int cmd_run_single(const ExperimentContext& ctx) {
    const RunConfig& c = ctx.config;
    validate_config(c);
    fs::create_directories(ctx.out_dir);
    const Grid2D grid = make_grid(c);
    const SimConfig sc = make_sim_config(c);
    const RunResult r = run_ctap(sc, initial_vortex(grid, -c.d_max));

    CsvWriter w(joined(ctx.out_dir, "run_series.csv"),
                {"t", "Lz", "pop_L", "pop_M", "pop_R", "norm", "energy"});
    const ObservableSeries& s = r.series;
    for (size_t i = 0; i < s.values.size(); ++i)
        w.row({s.values[i], s.Lz[i], s.populations[i][0], s.populations[i][1],
               s.populations[i][2], s.norm[i], s.energy[i]});
    write_density_csv(joined(ctx.out_dir, "run_final_density.csv"), r.final_field);
    write_phase_csv(joined(ctx.out_dir, "run_final_phase.csv"), r.final_field);
    return 0;
}

}  // namespace ctap
