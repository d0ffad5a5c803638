#include <benchmark/benchmark.h>

#include "ctap/double_well.hpp"
#include "ctap/fd_eigen.hpp"
#include "ctap/pcf.hpp"
#include "ctap/split_step.hpp"
#include "ctap/three_level.hpp"
#include "ctap/trajectory.hpp"

namespace {

void BM_pcf_d(benchmark::State& state) {
    double nu = 0.3;
    for (auto _ : state) {
        auto v = ctap::pcf_d(nu, -4.2);
        benchmark::DoNotOptimize(v);
        nu += 1e-9;  // defeat caching without moving the regime
    }
}
BENCHMARK(BM_pcf_d);

void BM_double_well_doublet(benchmark::State& state) {
    const double d = 0.5 * static_cast<double>(state.range(0));
    for (auto _ : state) {
        auto w = ctap::double_well_doublet(d, 0);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_double_well_doublet)->Arg(4)->Arg(8)->Arg(14);

void BM_fd_eigensolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const double h = 24.0 / (n + 1);
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) {
        const double y = -12.0 + (i + 1) * h;
        v[i] = 0.5 * std::min((y + 3.5) * (y + 3.5), (y - 3.5) * (y - 3.5));
    }
    for (auto _ : state) {
        auto ev = ctap::fd_eigenvalues_grid(v, h, 6);
        benchmark::DoNotOptimize(ev);
    }
}
BENCHMARK(BM_fd_eigensolve)->Arg(1023)->Arg(4095);

void BM_band_schedules(benchmark::State& state) {
    ctap::TrajectoryPlan plan;
    plan.t_f = 1.0;
    for (auto _ : state) {
        auto s = ctap::build_band_schedules(plan, static_cast<int>(state.range(0)));
        benchmark::DoNotOptimize(s);
    }
}
BENCHMARK(BM_band_schedules)->Arg(51)->Unit(benchmark::kMillisecond);

void BM_split_step(benchmark::State& state) {
    const int nx = static_cast<int>(state.range(0));
    const int ny = 2 * nx;
    auto grid = ctap::Grid2D::make(nx, ny, 6.0, 16.0);
    auto f = ctap::initial_vortex(grid, -7.0);
    ctap::SplitStepper stepper(grid, 4e-3, 0.0);
    stepper.load(f);
    const ctap::PotentialSnapshot snap{{-7.0, 0.0, 7.0}};
    long idx = 0;
    for (auto _ : state) {
        stepper.step(snap, idx++);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_split_step)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
