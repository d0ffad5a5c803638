#include "ctap/observables.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "ctap/spectral.hpp"

namespace ctap {
namespace {

// Spectral partial derivative along one axis: multiply the transform by
// i*k (Nyquist mode zeroed: its derivative is not representable and the
// symmetric choice keeps real fields' derivatives real).
void spectral_derivative(const Grid2D& g, const std::vector<std::complex<double>>& a, int axis,
                         std::vector<std::complex<double>>& out) {
    Spectral2D fft(g.nx, g.ny);
    std::memcpy(fft.data(), a.data(), sizeof(std::complex<double>) * g.size());
    fft.forward();
    const double inv_n = 1.0 / static_cast<double>(g.size());
    std::complex<double>* b = fft.data();
    for (int i = 0; i < g.nx; ++i) {
        const double kxv = (axis == 0 && i == g.nx / 2) ? 0.0 : g.kx[i];
        for (int j = 0; j < g.ny; ++j) {
            const double kyv = (axis == 1 && j == g.ny / 2) ? 0.0 : g.ky[j];
            const double k = axis == 0 ? kxv : kyv;
            b[static_cast<size_t>(i) * g.ny + j] *= std::complex<double>(0.0, k * inv_n);
        }
    }
    fft.backward();
    out.assign(b, b + g.size());
}

}  // namespace

double density_centroid_y(const GridField& f) {
    double w = 0.0, s = 0.0;
    const Grid2D& g = f.grid;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const double d = std::norm(f.amplitudes[static_cast<size_t>(i) * g.ny + j]);
            w += d;
            s += d * g.y[j];
        }
    if (!(w > 0.0)) throw std::invalid_argument("density_centroid_y: zero field");
    return s / w;
}

double angular_momentum(const GridField& f, double about_y) {
    const Grid2D& g = f.grid;
    std::vector<std::complex<double>> dx_psi, dy_psi;
    spectral_derivative(g, f.amplitudes, 0, dx_psi);
    spectral_derivative(g, f.amplitudes, 1, dy_psi);
    double acc = 0.0;
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j) {
            const size_t idx = static_cast<size_t>(i) * g.ny + j;
            const std::complex<double> t =
                std::conj(f.amplitudes[idx]) *
                (g.x[i] * dy_psi[idx] - (g.y[j] - about_y) * dx_psi[idx]);
            acc += t.imag();
        }
    return acc * g.cell();
}

double angular_momentum(const GridField& f) { return angular_momentum(f, density_centroid_y(f)); }

std::array<double, 3> region_populations(const GridField& f,
                                         const std::array<double, 3>& c) {
    if (!(c[0] < c[1]) || !(c[1] < c[2]))
        throw std::invalid_argument("region_populations: centers must be sorted ascending");
    const Grid2D& g = f.grid;
    const double m1 = 0.5 * (c[0] + c[1]);
    const double m2 = 0.5 * (c[1] + c[2]);
    std::array<double, 3> pops{0.0, 0.0, 0.0};
    // Column sums first: populations depend on y only.
    std::vector<double> col(g.ny, 0.0);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            col[j] += std::norm(f.amplitudes[static_cast<size_t>(i) * g.ny + j]);
    for (int j = 0; j < g.ny; ++j) {
        const int band = g.y[j] < m1 ? 0 : (g.y[j] < m2 ? 1 : 2);
        pops[band] += col[j];
    }
    for (double& p : pops) p *= g.cell();
    return pops;
}

PeriodEstimate oscillation_period(const ObservableSeries& sweep) {
    const size_t n = sweep.values.size();
    if (sweep.Lz.size() != n || n < 3)
        throw std::invalid_argument("oscillation_period: need a sampled Lz sweep");
    double mean = 0.0;
    for (double v : sweep.Lz) mean += v;
    mean /= static_cast<double>(n);

    std::vector<double> crossings;
    for (size_t i = 1; i < n; ++i) {
        const double a = sweep.Lz[i - 1] - mean;
        const double b = sweep.Lz[i] - mean;
        if (a == 0.0) continue;  // counted from the other side
        if ((a < 0.0) != (b < 0.0) || b == 0.0) {
            const double w = a / (a - b);
            crossings.push_back(sweep.values[i - 1] +
                                w * (sweep.values[i] - sweep.values[i - 1]));
        }
    }
    if (crossings.size() < 3)
        throw std::invalid_argument("oscillation_period: fewer than 3 zero crossings");

    std::vector<double> gaps;
    for (size_t i = 1; i < crossings.size(); ++i) gaps.push_back(crossings[i] - crossings[i - 1]);
    double gmean = 0.0;
    for (double v : gaps) gmean += v;
    gmean /= static_cast<double>(gaps.size());
    double var = 0.0;
    for (double v : gaps) var += (v - gmean) * (v - gmean);
    var /= static_cast<double>(gaps.size());

    PeriodEstimate out;
    out.period = 2.0 * gmean;
    out.uncertainty = 2.0 * std::sqrt(var);
    out.crossings = static_cast<int>(crossings.size());
    return out;
}

}  // namespace ctap
