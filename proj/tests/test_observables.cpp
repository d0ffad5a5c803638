#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "ctap/grid.hpp"
#include "ctap/observables.hpp"
#include "doctest.h"

using namespace ctap;
using cplx = std::complex<double>;

namespace {

double phi(int n, double u) {
    const double g = std::pow(M_PI, -0.25) * std::exp(-0.5 * u * u);
    return n == 0 ? g : std::sqrt(2.0) * u * g;
}

// phi_1(x) phi_0(y-y0) + i e^{-i theta} phi_0(x) phi_1(y-y0), normalized.
GridField vortex_at(const Grid2D& g, double y0, double theta) {
    GridField f{g, std::vector<cplx>(g.size())};
    const cplx c = cplx(0.0, 1.0) * std::polar(1.0, -theta);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double x = g.x[i], y = g.y[j] - y0;
            f.amplitudes[i * g.ny + j] = phi(1, x) * phi(0, y) + c * phi(0, x) * phi(1, y);
        }
    normalize(f);
    return f;
}

}  // namespace

TEST_CASE("circulation of the two-mode state is cos theta") {
    auto g = Grid2D::make(64, 64, 8.0, 8.0);
    for (double th : {0.0, M_PI / 3, M_PI / 2, 2.2, M_PI}) {
        auto f = vortex_at(g, 0.0, th);
        CHECK(angular_momentum(f, 0.0) == doctest::Approx(std::cos(th)).epsilon(5e-9).scale(1.0));
    }
}

TEST_CASE("centroid-referenced circulation is translation invariant") {
    auto g = Grid2D::make(64, 128, 8.0, 16.0);
    for (double y0 : {-7.0, 0.0, 4.5}) {
        auto f = vortex_at(g, y0, 0.9);
        CHECK(density_centroid_y(f) == doctest::Approx(y0).epsilon(1e-9).scale(1.0));
        CHECK(angular_momentum(f) == doctest::Approx(std::cos(0.9)).epsilon(5e-9));
        CHECK(angular_momentum(f, y0) == doctest::Approx(std::cos(0.9)).epsilon(5e-9));
    }
}

TEST_CASE("global phase does not change the circulation") {
    auto g = Grid2D::make(64, 64, 8.0, 8.0);
    auto f = vortex_at(g, 0.0, 1.3);
    const double before = angular_momentum(f, 0.0);
    for (auto& a : f.amplitudes) a *= std::polar(1.0, 2.1);
    CHECK(angular_momentum(f, 0.0) == doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("a measurement about the wrong center is biased") {
    auto g = Grid2D::make(64, 128, 8.0, 16.0);
    auto f = vortex_at(g, -6.0, 0.0);
    CHECK(std::abs(angular_momentum(f, 0.0) - 1.0) > 0.1);
    CHECK(angular_momentum(f, -6.0) == doctest::Approx(1.0).epsilon(5e-9));
}

TEST_CASE("region populations split at the midpoints") {
    auto g = Grid2D::make(32, 128, 6.0, 16.0);
    GridField f{g, std::vector<cplx>(g.size())};
    // Three Gaussian blobs with weights 0.2 / 0.3 / 0.5 at the trap centers.
    const double w[3] = {0.2, 0.3, 0.5}, cy[3] = {-7.0, 0.0, 7.0};
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            double s = 0.0;
            for (int b = 0; b < 3; ++b)
                s += std::sqrt(w[b]) * phi(0, g.x[i]) * phi(0, g.y[j] - cy[b]);
            f.amplitudes[i * g.ny + j] = s;
        }
    auto pops = region_populations(f, {-7.0, 0.0, 7.0});
    const double total = field_norm(f);
    CHECK(pops[0] + pops[1] + pops[2] == doctest::Approx(total).epsilon(1e-12));
    // Cross terms are e^{-12ish} small, so the weights come back nearly exactly.
    CHECK(pops[0] == doctest::Approx(0.2).epsilon(1e-5));
    CHECK(pops[1] == doctest::Approx(0.3).epsilon(1e-5));
    CHECK(pops[2] == doctest::Approx(0.5).epsilon(1e-5));

    CHECK_THROWS_AS(region_populations(f, {0.0, -7.0, 7.0}), std::invalid_argument);
}

TEST_CASE("period extraction from a clean cosine") {
    ObservableSeries s;
    const double period = 132.0;
    for (int i = 0; i <= 200; ++i) {
        const double t = 200.0 + 2.0 * i;
        s.values.push_back(t);
        s.Lz.push_back(std::cos(2 * M_PI * t / period));
    }
    auto est = oscillation_period(s);
    CHECK(est.period == doctest::Approx(period).epsilon(1e-3));
    CHECK(est.uncertainty <= 0.5);
    CHECK(est.crossings >= 5);
}

TEST_CASE("period extraction tolerates an offset") {
    ObservableSeries s;
    const double period = 90.0;
    for (int i = 0; i <= 300; ++i) {
        const double t = 1.5 * i;
        s.values.push_back(t);
        s.Lz.push_back(0.35 + std::cos(2 * M_PI * t / period));
    }
    auto est = oscillation_period(s);
    CHECK(est.period == doctest::Approx(period).epsilon(5e-3));
}

TEST_CASE("too few crossings is an error") {
    ObservableSeries s;
    for (int i = 0; i <= 50; ++i) {
        s.values.push_back(double(i));
        s.Lz.push_back(std::cos(0.02 * i));  // less than half a cycle
    }
    CHECK_THROWS_AS(oscillation_period(s), std::invalid_argument);
    ObservableSeries empty;
    CHECK_THROWS_AS(oscillation_period(empty), std::invalid_argument);
}
