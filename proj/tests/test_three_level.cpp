#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <array>
#include <cmath>
#include <iterator>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

#include "ctap/three_level.hpp"
#include "ctap/trajectory.hpp"
#include "doctest.h"

#ifdef CTAP_TEST_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace ctap;
using cplx = std::complex<double>;

namespace {

CouplingSchedule constant_schedule(double J_LM, double J_MR, double eps, double t_f,
                                   int samples = 41) {
    CouplingSchedule s;
    for (int i = 0; i < samples; ++i) {
        s.times.push_back(t_f * i / (samples - 1.0));
        s.J_LM.push_back(J_LM);
        s.J_MR.push_back(J_MR);
        s.eps.push_back(eps);
    }
    return s;
}

// Counter-intuitive Gaussian pulse pair with plenty of adiabaticity.
CouplingSchedule stirap_schedule(double t_f, int samples = 801) {
    CouplingSchedule s;
    const double sigma = t_f / 6.0;
    const double tau = 0.7 * sigma;
    for (int i = 0; i < samples; ++i) {
        const double t = t_f * i / (samples - 1.0);
        const double u = t - 0.5 * t_f;
        s.times.push_back(t);
        s.J_MR.push_back(0.3 * std::exp(-std::pow((u + tau) / sigma, 2)));
        s.J_LM.push_back(0.3 * std::exp(-std::pow((u - tau) / sigma, 2)));
        s.eps.push_back(0.5);
    }
    return s;
}

ThreeLevelState left_state() { return {{cplx(1.0), cplx(0.0), cplx(0.0)}, 0}; }

}  // namespace

TEST_CASE("mixing angle endpoints and symmetry") {
    CHECK(mixing_angle(0.0, 1.0) == doctest::Approx(0.0));
    CHECK(mixing_angle(1.0, 0.0) == doctest::Approx(M_PI / 2));
    CHECK(mixing_angle(1.0, 1.0) == doctest::Approx(M_PI / 4));
    CHECK(mixing_angle(2.5, 2.5) == doctest::Approx(M_PI / 4));
    // Scale invariance
    CHECK(mixing_angle(0.3, 0.9) == doctest::Approx(mixing_angle(3.0, 9.0)));
    CHECK_THROWS_AS(mixing_angle(0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(mixing_angle(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("dark state is annihilated by the coupling part") {
    std::mt19937 rng(20260814);
    std::uniform_real_distribution<double> u(1e-6, 5.0);
    for (int trial = 0; trial < 100; ++trial) {
        const double jlm = u(rng), jmr = u(rng), eps = u(rng) - 2.5;
        const double th = mixing_angle(jlm, jmr);
        auto d = dark_state(th).amplitudes;
        // (H - eps I) d with bonding-sign couplings
        const cplx r0 = -jlm * d[1];
        const cplx r1 = -jlm * d[0] - jmr * d[2];
        const cplx r2 = -jmr * d[1];
        (void)eps;
        CHECK(std::abs(r0) <= 1e-13);
        CHECK(std::abs(r1) <= 1e-13);
        CHECK(std::abs(r2) <= 1e-13);
        // Unit norm, empty middle site
        const double n2 = std::norm(d[0]) + std::norm(d[1]) + std::norm(d[2]);
        CHECK(n2 == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(std::abs(d[1]) == 0.0);
    }
}

TEST_CASE("dark state endpoints park the atom in one outer trap") {
    auto dl = dark_state(0.0).amplitudes;
    CHECK(std::abs(dl[0]) == doctest::Approx(1.0));
    auto dr = dark_state(M_PI / 2).amplitudes;
    CHECK(std::abs(dr[2]) == doctest::Approx(1.0));
}

TEST_CASE("eigenvalue triplet for a 3-4-5 coupling pair") {
    auto s = constant_schedule(3.0, 4.0, 0.0, 1.0, 5);
    auto flow = eigenvalue_flow(s);
    REQUIRE(flow.size() == 5);
    for (const auto& tr : flow) {
        CHECK(tr.lower == doctest::Approx(-5.0));
        CHECK(tr.dark == doctest::Approx(0.0));
        CHECK(tr.upper == doctest::Approx(5.0));
    }
}

TEST_CASE("eigenvalue triplet rides on the site energy") {
    auto s = constant_schedule(3.0, 4.0, 1.25, 1.0, 3);
    auto flow = eigenvalue_flow(s);
    CHECK(flow[0].lower == doctest::Approx(-3.75));
    CHECK(flow[0].dark == doctest::Approx(1.25));
    CHECK(flow[0].upper == doctest::Approx(6.25));
}

TEST_CASE("schedule validation rejects malformed inputs") {
    auto ok = constant_schedule(1.0, 1.0, 0.5, 10.0);
    validate_schedule(ok);

    auto bad_order = ok;
    bad_order.times[3] = bad_order.times[2];
    CHECK_THROWS_AS(validate_schedule(bad_order), std::invalid_argument);

    auto bad_sign = ok;
    bad_sign.J_LM[5] = -0.1;
    CHECK_THROWS_AS(validate_schedule(bad_sign), std::invalid_argument);

    auto bad_size = ok;
    bad_size.eps.pop_back();
    CHECK_THROWS_AS(validate_schedule(bad_size), std::invalid_argument);

    auto bad_start = ok;
    for (auto& t : bad_start.times) t += 1.0;
    CHECK_THROWS_AS(validate_schedule(bad_start), std::invalid_argument);
}

TEST_CASE("uncoupled evolution only rotates the phase") {
    auto s = constant_schedule(0.0, 0.0, 0.7, 5.0);
    auto res = propagate(s, left_state());
    const auto& a = res.final_state.amplitudes;
    CHECK(std::abs(a[0] - std::polar(1.0, -0.7 * 5.0)) <= 1e-10);
    CHECK(std::abs(a[1]) <= 1e-12);
    CHECK(std::abs(a[2]) <= 1e-12);
    CHECK(res.norm_drift <= 1e-12);
}

TEST_CASE("constant coupling gives two-level Rabi flopping") {
    const double J = 0.37, T = 9.0;
    auto s = constant_schedule(J, 0.0, 0.0, T);
    auto res = propagate(s, left_state());
    const auto& a = res.final_state.amplitudes;
    CHECK(std::norm(a[0]) == doctest::Approx(std::cos(J * T) * std::cos(J * T)).epsilon(1e-8));
    CHECK(std::norm(a[1]) == doctest::Approx(std::sin(J * T) * std::sin(J * T)).epsilon(1e-8));
    CHECK(std::abs(a[2]) <= 1e-12);
}

#ifdef CTAP_TEST_HAVE_EIGEN
TEST_CASE("matches a dense matrix-exponential oracle for constant H") {
    const double jlm = 0.8, jmr = 0.45, eps = 0.3, T = 7.0;
    auto s = constant_schedule(jlm, jmr, eps, T);
    ThreeLevelState init{{cplx(0.6, 0.0), cplx(0.0, 0.48), cplx(-0.64, 0.0)}, 0};
    auto res = propagate(s, init);

    Eigen::Matrix3d H;
    H << eps, -jlm, 0.0, -jlm, eps, -jmr, 0.0, -jmr, eps;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(H);
    Eigen::Vector3cd v;
    v << init.amplitudes[0], init.amplitudes[1], init.amplitudes[2];
    Eigen::Vector3cd w = Eigen::Vector3cd::Zero();
    for (int k = 0; k < 3; ++k) {
        const cplx phase = std::polar(1.0, -es.eigenvalues()[k] * T);
        const Eigen::Vector3cd mode = es.eigenvectors().col(k).cast<cplx>();
        w += phase * mode * (mode.adjoint() * v)(0, 0);
    }
    for (int i = 0; i < 3; ++i) CHECK(std::abs(res.final_state.amplitudes[i] - w[i]) <= 1e-9);
}
#endif

TEST_CASE("slow counter-intuitive pulses transfer the population") {
    auto s = stirap_schedule(300.0);
    auto res = propagate(s, left_state());
    CHECK(std::norm(res.final_state.amplitudes[2]) >= 0.999);
    double max_mid = 0.0;
    for (const auto& p : res.series.populations) max_mid = std::max(max_mid, p[1]);
    CHECK(max_mid <= 0.02);
    CHECK(res.norm_drift <= 1e-9);
}

TEST_CASE("fast pulses break adiabaticity") {
    auto s = stirap_schedule(3.0);
    auto res = propagate(s, left_state());
    CHECK(std::norm(res.final_state.amplitudes[2]) < 0.5);
}

TEST_CASE("recorded populations track the final state") {
    auto s = stirap_schedule(120.0);
    auto res = propagate(s, left_state());
    REQUIRE(!res.series.times.empty());
    CHECK(res.series.times.front() == doctest::Approx(0.0));
    CHECK(res.series.times.back() == doctest::Approx(120.0));
    const auto& last = res.series.populations.back();
    for (int i = 0; i < 3; ++i)
        CHECK(last[i] == doctest::Approx(std::norm(res.final_state.amplitudes[i])).epsilon(1e-12));
}

TEST_CASE("static unit-gap phase functionals") {
    // eps0 = 0.5 and eps1 = 1.5 throughout: gamma = 3/2 t_f + t_f/2 and
    // theta_rel = 0 exactly, so the predicted circulation is +1.
    const double T = 10.0;
    auto b0 = constant_schedule(0.0, 0.0, 0.5, T);
    auto b1 = constant_schedule(0.0, 0.0, 1.5, T);
    auto rec = phase_functionals(b0, b1);
    CHECK(rec.t_f == doctest::Approx(T));
    CHECK(rec.gamma == doctest::Approx(2.0 * T).epsilon(1e-12));
    CHECK(rec.theta_rel == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(rec.predicted_Lz == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("band gap excess drives the relative phase") {
    // eps1 - eps0 = 1.2: theta_rel = 0.2 t_f, Lz = cos(0.2 t_f).
    const double T = 25.0;
    auto b0 = constant_schedule(0.0, 0.0, 0.5, T);
    auto b1 = constant_schedule(0.0, 0.0, 1.7, T);
    auto rec = phase_functionals(b0, b1);
    CHECK(rec.theta_rel == doctest::Approx(0.2 * T).epsilon(1e-10));
    CHECK(rec.predicted_Lz == doctest::Approx(std::cos(0.2 * T)).epsilon(1e-10));
}

TEST_CASE("sampled schedules reflect the trap geometry") {
    TrajectoryPlan plan;  // defaults
    auto bands = build_band_schedules(plan, 401);
    validate_schedule(bands.band0);
    validate_schedule(bands.band1);
    REQUIRE(bands.band0.times.size() == 401);
    CHECK(bands.band0.band_n == 0);
    CHECK(bands.band1.band_n == 1);

    // Fully separated traps at the endpoints: harmonic site energies and
    // negligible tunneling.
    CHECK(std::abs(bands.band0.eps.front() - 0.5) <= 1e-4);
    CHECK(std::abs(bands.band1.eps.front() - 1.5) <= 1e-4);
    CHECK(bands.band0.J_LM.front() <= 1e-4);
    CHECK(bands.band1.J_MR.back() <= 1e-3);

    // Counter-intuitive ordering: the M-R coupling peaks earlier.
    auto peak_at = [](const std::vector<double>& v) {
        return std::distance(v.begin(), std::max_element(v.begin(), v.end()));
    };
    CHECK(peak_at(bands.band0.J_MR) < peak_at(bands.band0.J_LM));
    CHECK(peak_at(bands.band1.J_MR) < peak_at(bands.band1.J_LM));

    // During closest approach the band gap departs from the static unit
    // spacing (site energies drift as the wells deform).
    double worst_gap_dev = 0.0;
    for (size_t i = 0; i < bands.band0.times.size(); ++i)
        worst_gap_dev =
            std::max(worst_gap_dev, std::abs(bands.band1.eps[i] - bands.band0.eps[i] - 1.0));
    CHECK(worst_gap_dev > 1e-3);
}

TEST_CASE("schedule shape is invariant under time rescaling") {
    TrajectoryPlan a;  // defaults
    auto ref = build_band_schedules(a, 101);
    auto b = a;
    b.t_f *= 2.5;
    auto scaled = build_band_schedules(b, 101);
    for (size_t i = 0; i < ref.band0.times.size(); ++i) {
        CHECK(scaled.band0.times[i] == doctest::Approx(2.5 * ref.band0.times[i]).epsilon(1e-12));
        CHECK(scaled.band0.J_LM[i] == doctest::Approx(ref.band0.J_LM[i]).epsilon(1e-12));
        CHECK(scaled.band1.eps[i] == doctest::Approx(ref.band1.eps[i]).epsilon(1e-12));
    }
}
