#include "ctap/split_step.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

#include "ctap/errors.hpp"

namespace ctap {
namespace {

using cplx = std::complex<double>;

double phi0(double u) { return std::pow(M_PI, -0.25) * std::exp(-0.5 * u * u); }
double phi1(double u) { return std::sqrt(2.0) * u * phi0(u); }

}  // namespace

GridField initial_vortex(const Grid2D& grid, double center_y, double phase_theta) {
    if (grid.lx < 6.0 || std::abs(center_y) + 6.0 > grid.ly)
        throw std::invalid_argument("initial_vortex: trap too close to the domain edge");
    GridField f;
    f.grid = grid;
    f.amplitudes.resize(grid.size());
    const cplx rot = cplx(0.0, 1.0) * std::polar(1.0, -phase_theta);
    for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.x[i];
        for (int j = 0; j < grid.ny; ++j) {
            const double yp = grid.y[j] - center_y;
            f.amplitudes[static_cast<size_t>(i) * grid.ny + j] =
                phi1(x) * phi0(yp) + rot * (phi0(x) * phi1(yp));
        }
    }
    normalize(f);
    return f;
}

SplitStepper::SplitStepper(const Grid2D& grid, double dt, double U)
    : grid_(grid), dt_(dt), U_(U), fft_(grid.nx, grid.ny) {
    if (!(dt > 0.0)) throw std::invalid_argument("SplitStepper: dt must be positive");
    kphase_.resize(grid_.size());
    const double inv_n = 1.0 / static_cast<double>(grid_.size());
    for (int i = 0; i < grid_.nx; ++i)
        for (int j = 0; j < grid_.ny; ++j) {
            const double ek = 0.5 * (grid_.kx[i] * grid_.kx[i] + grid_.ky[j] * grid_.ky[j]);
            kphase_[static_cast<size_t>(i) * grid_.ny + j] = std::polar(inv_n, -dt * ek);
        }
    xphase_half_.resize(grid_.nx);
    xphase_full_.resize(grid_.nx);
    for (int i = 0; i < grid_.nx; ++i) {
        const double vx = 0.5 * grid_.x[i] * grid_.x[i];
        xphase_half_[i] = std::polar(1.0, -0.5 * dt * vx);
        xphase_full_[i] = std::polar(1.0, -dt * vx);
    }
    yphase_.resize(grid_.ny);
}

void SplitStepper::load(const GridField& f) {
    if (f.grid.nx != grid_.nx || f.grid.ny != grid_.ny)
        throw std::invalid_argument("SplitStepper: field grid mismatch");
    std::memcpy(fft_.data(), f.amplitudes.data(), sizeof(cplx) * grid_.size());
}

void SplitStepper::store(GridField& f) const {
    f.grid = grid_;
    f.amplitudes.assign(fft_.data(), fft_.data() + grid_.size());
}

void SplitStepper::kick(const PotentialSnapshot& snap, double tau,
                        const std::vector<cplx>& xphase) {
    for (int j = 0; j < grid_.ny; ++j) yphase_[j] = std::polar(1.0, -tau * snap.well(grid_.y[j]));
    cplx* p = fft_.data();
    if (U_ == 0.0) {
        for (int i = 0; i < grid_.nx; ++i) {
            const cplx xp = xphase[i];
            for (int j = 0; j < grid_.ny; ++j) p[static_cast<size_t>(i) * grid_.ny + j] *= xp * yphase_[j];
        }
    } else {
        const double tu = tau * U_;
        for (int i = 0; i < grid_.nx; ++i) {
            const cplx xp = xphase[i];
            for (int j = 0; j < grid_.ny; ++j) {
                cplx& a = p[static_cast<size_t>(i) * grid_.ny + j];
                a *= xp * yphase_[j] * std::polar(1.0, -tu * std::norm(a));
            }
        }
    }
}

void SplitStepper::half_kick(const PotentialSnapshot& snap) { kick(snap, 0.5 * dt_, xphase_half_); }

void SplitStepper::full_kick(const PotentialSnapshot& snap) { kick(snap, dt_, xphase_full_); }

void SplitStepper::kinetic(long step_index) {
    fft_.forward();
    cplx* p = fft_.data();
    for (size_t idx = 0; idx < grid_.size(); ++idx) p[idx] *= kphase_[idx];
    fft_.backward();
    // One NaN anywhere contaminates every mode after a transform, so a
    // single-element sentinel is a complete (one step delayed) detector.
    if (!std::isfinite(p[0].real())) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "split step %ld produced non-finite amplitudes",
                      step_index);
        throw convergence_error(buf);
    }
}

void SplitStepper::step(const PotentialSnapshot& snap, long step_index) {
    half_kick(snap);
    kinetic(step_index);
    half_kick(snap);
}

double SplitStepper::edge_density() const {
    const cplx* p = fft_.data();
    double m = 0.0;
    for (int j = 0; j < grid_.ny; ++j) {
        m = std::max(m, std::norm(p[j]));
        m = std::max(m, std::norm(p[static_cast<size_t>(grid_.nx - 1) * grid_.ny + j]));
    }
    for (int i = 0; i < grid_.nx; ++i) {
        m = std::max(m, std::norm(p[static_cast<size_t>(i) * grid_.ny]));
        m = std::max(m, std::norm(p[static_cast<size_t>(i) * grid_.ny + grid_.ny - 1]));
    }
    return m;
}

void step(GridField& f, const PotentialSnapshot& snap, double dt, double U) {
    SplitStepper s(f.grid, dt, U);
    s.load(f);
    s.step(snap);
    s.store(f);
}

namespace {

double kinetic_expectation(const GridField& f) {
    const Grid2D& g = f.grid;
    Spectral2D fft(g.nx, g.ny);
    std::memcpy(fft.data(), f.amplitudes.data(), sizeof(cplx) * g.size());
    fft.forward();
    const cplx* p = fft.data();
    double acc = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double ek = 0.5 * (g.kx[i] * g.kx[i] + g.ky[j] * g.ky[j]);
            acc += ek * std::norm(p[static_cast<size_t>(i) * g.ny + j]);
        }
    // Parseval: sum_x |psi|^2 cell = (cell / N) sum_k |F|^2.
    return acc * g.cell() / static_cast<double>(g.size());
}

}  // namespace

double chemical_potential(const GridField& f, const PotentialSnapshot& snap, double U) {
    const Grid2D& g = f.grid;
    double pot = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double d = std::norm(f.amplitudes[static_cast<size_t>(i) * g.ny + j]);
            pot += (snap(g.x[i], g.y[j]) + U * d) * d;
        }
    return kinetic_expectation(f) + pot * g.cell();
}

double total_energy(const GridField& f, const PotentialSnapshot& snap, double U) {
    const Grid2D& g = f.grid;
    double pot = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double d = std::norm(f.amplitudes[static_cast<size_t>(i) * g.ny + j]);
            pot += (snap(g.x[i], g.y[j]) + 0.5 * U * d) * d;
        }
    return kinetic_expectation(f) + pot * g.cell();
}

RunResult run_ctap(const SimConfig& config, const GridField& initial) {
    validate_plan(config.plan);
    if (config.record_stride < 1)
        throw std::invalid_argument("run_ctap: record_stride must be >= 1");
    if (std::abs(field_norm(initial) - 1.0) > 1e-8)
        throw std::invalid_argument("run_ctap: initial field not normalized");
    const Grid2D& g = initial.grid;
    const double ek_max =
        0.5 * (g.kx[g.nx / 2] * g.kx[g.nx / 2] + g.ky[g.ny / 2] * g.ky[g.ny / 2]);
    if (!(config.dt > 0.0) || config.dt * ek_max >= 1.0)
        throw std::invalid_argument("run_ctap: dt too large for this grid (dt * Ek_max >= 1)");

    const double t_f = config.plan.t_f;
    const long nsteps = std::max(1L, static_cast<long>(std::ceil(t_f / config.dt - 1e-9)));
    const double dt = t_f / static_cast<double>(nsteps);

    auto potential_at = [&](double t) {
        return snapshot(config.plan, config.freeze_traps ? 0.0 : t);
    };

    SplitStepper stepper(g, dt, config.nonlinearity_U);
    stepper.load(initial);

    RunResult out;
    GridField scratch;
    auto record = [&](double t) {
        stepper.store(scratch);
        const PotentialSnapshot snap = potential_at(t);
        out.series.values.push_back(t);
        out.series.Lz.push_back(angular_momentum(scratch));
        out.series.populations.push_back(region_populations(scratch, snap.trap_centers_y));
        out.series.norm.push_back(field_norm(scratch));
        out.series.energy.push_back(total_energy(scratch, snap, config.nonlinearity_U));
        out.max_edge_density = std::max(out.max_edge_density, stepper.edge_density());
    };

    record(0.0);
    stepper.half_kick(potential_at(0.0));
    for (long k = 0; k < nsteps; ++k) {
        stepper.kinetic(k);
        const double t_next = dt * static_cast<double>(k + 1);
        const bool last = k + 1 == nsteps;
        if (last || (k + 1) % config.record_stride == 0) {
            stepper.half_kick(potential_at(t_next));
            record(t_next);
            if (!last) stepper.half_kick(potential_at(t_next));
        } else {
            stepper.full_kick(potential_at(t_next));
        }
    }
    stepper.store(out.final_field);
    return out;
}

}  // namespace ctap
