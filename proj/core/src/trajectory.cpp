#include "ctap/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace ctap {
namespace {

// Ramp profile r: [0,1] -> [0,1] with r'(0) = r'(1) = 0, so the assembled
// pulse is C1 across segment joints.
double ramp_profile(RampShape shape, double s) {
    if (shape == RampShape::sin2) {
        const double c = std::sin(0.5 * M_PI * s);
        return c * c;
    }
    return s * s * (3.0 - 2.0 * s);  // smoothed linear
}

// Single pulse, time measured from its own start: descend over ramp_len,
// dwell at d_min, ascend back. Outside the pulse the distance is d_max.
double pulse(const TrajectoryPlan& p, double ramp_len, double dwell_len, double u) {
    const double depth = p.d_max - p.d_min;
    if (u <= 0.0 || u >= 2.0 * ramp_len + dwell_len) return p.d_max;
    if (u < ramp_len) return p.d_max - depth * ramp_profile(p.ramp, u / ramp_len);
    if (u <= ramp_len + dwell_len) return p.d_min;
    return p.d_max - depth * ramp_profile(p.ramp, (2.0 * ramp_len + dwell_len - u) / ramp_len);
}

}  // namespace

void validate_plan(const TrajectoryPlan& p) {
    if (!(p.t_f > 0.0)) throw std::invalid_argument("plan: t_f must be positive");
    if (!(p.d_min > 0.0) || !(p.d_min < p.d_max))
        throw std::invalid_argument("plan: need 0 < d_min < d_max");
    if (!(p.overlap_fraction > 0.0) || !(p.overlap_fraction < 1.0))
        throw std::invalid_argument("plan: overlap_fraction must lie in (0, 1)");
    if (!(p.ramp_fraction > 0.0) || !(p.dwell_fraction >= 0.0))
        throw std::invalid_argument("plan: ramp_fraction must be positive, dwell_fraction >= 0");
    const double window = 2.0 * p.ramp_fraction + p.dwell_fraction;
    const double span = (2.0 - p.overlap_fraction) * window;
    if (span > 1.0 + 1e-12)
        throw std::invalid_argument("plan: delayed pulse pair does not fit inside t_f");
}

PairDistances plan_distances(const TrajectoryPlan& p, double t) {
    validate_plan(p);
    const double slack = 1e-9 * p.t_f;
    if (t < -slack || t > p.t_f + slack)
        throw std::invalid_argument("plan_distances: t outside [0, t_f]");
    t = std::min(std::max(t, 0.0), p.t_f);

    const double ramp_len = p.ramp_fraction * p.t_f;
    const double dwell_len = p.dwell_fraction * p.t_f;
    const double window = 2.0 * ramp_len + dwell_len;
    const double delay = (1.0 - p.overlap_fraction) * window;
    const double span = delay + window;
    const double start = 0.5 * (p.t_f - span);

    PairDistances out;
    out.d_MR = pulse(p, ramp_len, dwell_len, t - start);
    out.d_LM = pulse(p, ramp_len, dwell_len, t - start - delay);
    return out;
}

PotentialSnapshot snapshot(const TrajectoryPlan& p, double t) {
    const PairDistances d = plan_distances(p, t);
    return PotentialSnapshot{{-d.d_LM, 0.0, d.d_MR}};
}

}  // namespace ctap
