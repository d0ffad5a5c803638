#include "ctap/three_level.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ctap/double_well.hpp"
#include "ctap/errors.hpp"
#include "ctap/fd_eigen.hpp"

namespace ctap {
namespace {

using cplx = std::complex<double>;
using vec3 = std::array<cplx, 3>;

// Linear interpolation on the schedule grid; t is already clamped to
// [0, t_f] by the caller.
struct ScheduleSlice {
    double J_LM, J_MR, eps;
};

ScheduleSlice slice_at(const CouplingSchedule& s, double t) {
    const auto& ts = s.times;
    auto it = std::upper_bound(ts.begin(), ts.end(), t);
    if (it == ts.begin()) ++it;
    if (it == ts.end()) --it;
    const size_t j = static_cast<size_t>(it - ts.begin());
    const size_t i = j - 1;
    const double w = (t - ts[i]) / (ts[j] - ts[i]);
    return {s.J_LM[i] + w * (s.J_LM[j] - s.J_LM[i]), s.J_MR[i] + w * (s.J_MR[j] - s.J_MR[i]),
            s.eps[i] + w * (s.eps[j] - s.eps[i])};
}

// -i H a with bonding-sign couplings: H = eps I - J_LM (|L><M| + h.c.)
//                                            - J_MR (|M><R| + h.c.)
vec3 rhs(const ScheduleSlice& c, const vec3& a) {
    const cplx mi(0.0, -1.0);
    return {mi * (c.eps * a[0] - c.J_LM * a[1]),
            mi * (-c.J_LM * a[0] + c.eps * a[1] - c.J_MR * a[2]),
            mi * (-c.J_MR * a[1] + c.eps * a[2])};
}

double norm2(const vec3& a) {
    return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]);
}

}  // namespace

void validate_schedule(const CouplingSchedule& s) {
    const size_t n = s.times.size();
    if (n < 2) throw std::invalid_argument("schedule: need at least two samples");
    if (s.J_LM.size() != n || s.J_MR.size() != n || s.eps.size() != n)
        throw std::invalid_argument("schedule: array lengths differ");
    if (s.times.front() != 0.0) throw std::invalid_argument("schedule: times must start at 0");
    for (size_t i = 1; i < n; ++i)
        if (!(s.times[i] > s.times[i - 1]))
            throw std::invalid_argument("schedule: times must be strictly increasing");
    for (size_t i = 0; i < n; ++i)
        if (!(s.J_LM[i] >= 0.0) || !(s.J_MR[i] >= 0.0))
            throw std::invalid_argument("schedule: J values must be non-negative");
}

double mixing_angle(double J_LM, double J_MR) {
    if (!(J_LM >= 0.0) || !(J_MR >= 0.0))
        throw std::invalid_argument("mixing_angle: couplings must be non-negative");
    if (J_LM == 0.0 && J_MR == 0.0)
        throw std::invalid_argument("mixing_angle: undefined for zero couplings");
    return std::atan2(J_LM, J_MR);
}

ThreeLevelState dark_state(double theta_mix) {
    if (!(theta_mix >= 0.0) || !(theta_mix <= M_PI_2 + 1e-12))
        throw std::invalid_argument("dark_state: angle outside [0, pi/2]");
    return {{cplx(std::cos(theta_mix)), cplx(0.0), cplx(-std::sin(theta_mix))}, 0};
}

std::vector<EigenTriplet> eigenvalue_flow(const CouplingSchedule& s) {
    validate_schedule(s);
    std::vector<EigenTriplet> out;
    out.reserve(s.times.size());
    for (size_t i = 0; i < s.times.size(); ++i) {
        const double r = std::hypot(s.J_LM[i], s.J_MR[i]);
        out.push_back({s.eps[i] - r, s.eps[i], s.eps[i] + r});
    }
    return out;
}

PropagationResult propagate(const CouplingSchedule& s, const ThreeLevelState& initial) {
    validate_schedule(s);
    if (std::abs(norm2(initial.amplitudes) - 1.0) > 1e-9)
        throw std::invalid_argument("propagate: initial state not normalized");

    const double t_f = s.t_f();
    PropagationResult res;
    res.final_state = initial;
    res.final_state.band_n = s.band_n;
    res.norm_drift = 0.0;
    if (t_f == 0.0) return res;

    const double h_max = std::min(1e-3, t_f / 1e4);
    const long nsteps = static_cast<long>(std::ceil(t_f / h_max - 1e-9));
    const double h = t_f / static_cast<double>(nsteps);

    vec3 a = initial.amplitudes;
    res.series.times.reserve(nsteps + 1);
    res.series.populations.reserve(nsteps + 1);
    auto record = [&](double t, const vec3& v) {
        res.series.times.push_back(t);
        res.series.populations.push_back({std::norm(v[0]), std::norm(v[1]), std::norm(v[2])});
    };
    record(0.0, a);

    for (long k = 0; k < nsteps; ++k) {
        const double t = h * static_cast<double>(k);
        const ScheduleSlice c0 = slice_at(s, std::min(t, t_f));
        const ScheduleSlice cm = slice_at(s, std::min(t + 0.5 * h, t_f));
        const ScheduleSlice c1 = slice_at(s, std::min(t + h, t_f));

        const vec3 k1 = rhs(c0, a);
        vec3 tmp;
        for (int i = 0; i < 3; ++i) tmp[i] = a[i] + 0.5 * h * k1[i];
        const vec3 k2 = rhs(cm, tmp);
        for (int i = 0; i < 3; ++i) tmp[i] = a[i] + 0.5 * h * k2[i];
        const vec3 k3 = rhs(cm, tmp);
        for (int i = 0; i < 3; ++i) tmp[i] = a[i] + h * k3[i];
        const vec3 k4 = rhs(c1, tmp);
        for (int i = 0; i < 3; ++i)
            a[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        const double drift = std::abs(norm2(a) - 1.0);
        if (drift > 1e-6) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "propagate: norm drift %.3e at t = %.6g with step %.3e", drift,
                          t + h, h);
            throw convergence_error(buf);
        }
        record(t + h, a);
    }

    res.final_state.amplitudes = a;
    res.norm_drift = std::abs(norm2(a) - 1.0);
    return res;
}

PhaseRecord phase_functionals(const CouplingSchedule& band0, const CouplingSchedule& band1) {
    validate_schedule(band0);
    validate_schedule(band1);
    const size_t n = band0.times.size();
    if (band1.times.size() != n)
        throw std::invalid_argument("phase_functionals: schedules use different time grids");
    const double t_f = band0.t_f();
    for (size_t i = 0; i < n; ++i)
        if (std::abs(band0.times[i] - band1.times[i]) > 1e-12 * std::max(1.0, t_f))
            throw std::invalid_argument("phase_functionals: schedules use different time grids");

    double int_eps0 = 0.0, int_gap = 0.0;
    for (size_t i = 1; i < n; ++i) {
        const double dt = band0.times[i] - band0.times[i - 1];
        int_eps0 += 0.5 * dt * (band0.eps[i] + band0.eps[i - 1]);
        int_gap += 0.5 * dt * ((band1.eps[i] - band0.eps[i]) + (band1.eps[i - 1] - band0.eps[i - 1]));
    }

    PhaseRecord rec;
    rec.t_f = t_f;
    rec.gamma = 1.5 * t_f + int_eps0;
    rec.theta_rel = -t_f + int_gap;
    rec.predicted_Lz = std::cos(rec.theta_rel);
    return rec;
}

BandSchedules build_band_schedules(const TrajectoryPlan& plan, int samples) {
    validate_plan(plan);
    if (samples < 9) throw std::invalid_argument("build_band_schedules: too few samples");

    BandSchedules out;
    out.band0.band_n = 0;
    out.band1.band_n = 1;
    for (CouplingSchedule* s : {&out.band0, &out.band1}) {
        s->times.reserve(samples);
        s->J_LM.reserve(samples);
        s->J_MR.reserve(samples);
        s->eps.reserve(samples);
    }

    for (int i = 0; i < samples; ++i) {
        const double t = plan.t_f * static_cast<double>(i) / (samples - 1);
        const PairDistances d = plan_distances(plan, t);

        const WellDoublet lm0 = double_well_doublet(d.d_LM, 0);
        const WellDoublet lm1 = double_well_doublet(d.d_LM, 1);
        const WellDoublet mr0 = double_well_doublet(d.d_MR, 0);
        const WellDoublet mr1 = double_well_doublet(d.d_MR, 1);

        // Band centers from the instantaneous three-well spectrum. The grid
        // is laid out so both potential kinks (the trap midpoints) sit on
        // nodes of every refinement subgrid; a kink between nodes shifts
        // within the cell as h halves and spoils the h^2 error model the
        // refinement check relies on.
        const double m1 = -0.5 * d.d_LM, m2 = 0.5 * d.d_MR;
        const double h4_target = 4.0 * 3.9e-3;
        const int cells = std::max(1, static_cast<int>(std::lround((m2 - m1) / h4_target)));
        const double h4 = (m2 - m1) / cells;
        const int pad_l = static_cast<int>(std::ceil((9.0 + 0.5 * d.d_LM) / h4 - 1e-9));
        const int pad_r = static_cast<int>(std::ceil((9.0 + 0.5 * d.d_MR) / h4 - 1e-9));
        const double y_min = m1 - h4 * pad_l;
        const int n = 4 * (pad_l + cells + pad_r) - 1;
        const double h = 0.25 * h4;
        std::vector<double> v(n);
        for (int k = 0; k < n; ++k) {
            const double y = y_min + h * (k + 1);
            const double a = y + d.d_LM, b = y, c = y - d.d_MR;
            v[k] = 0.5 * std::min({a * a, b * b, c * c});
        }
        const std::vector<double> ev = fd_eigensolve_1d(v, h, 6, 1e-8);
        // Diagonal energy = middle eigenvalue of the band triplet, i.e. the
        // energy of the transfer branch itself. The band-n state follows
        // that branch adiabatically, so only this choice makes the phase
        // functionals track the phase the full simulation accumulates; the
        // triplet mean is pulled away from it by the uneven even/odd
        // splitting of whichever pair is merged.
        const double eps0 = ev[1];
        const double eps1 = ev[4];

        out.band0.times.push_back(t);
        out.band0.J_LM.push_back(lm0.tunneling_J);
        out.band0.J_MR.push_back(mr0.tunneling_J);
        out.band0.eps.push_back(eps0);

        out.band1.times.push_back(t);
        out.band1.J_LM.push_back(lm1.tunneling_J);
        out.band1.J_MR.push_back(mr1.tunneling_J);
        out.band1.eps.push_back(eps1);
    }
    return out;
}

}  // namespace ctap
