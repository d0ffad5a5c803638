#include "ctap/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <stdexcept>

namespace ctap {
namespace {

std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

Spectral2D::Spectral2D(int nx, int ny) : nx_(nx), ny_(ny) {
    if (!power_of_two(nx) || !power_of_two(ny))
        throw std::invalid_argument("Spectral2D: grid sizes must be powers of two");
    buf_ = static_cast<std::complex<double>*>(
        fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(nx) * ny));
    if (!buf_) throw std::bad_alloc();
    fftw_complex* raw = reinterpret_cast<fftw_complex*>(buf_);
    // FFTW_ESTIMATE keeps planning deterministic run to run (FFTW_MEASURE
    // races wall-clock timings and can pick different algorithms).
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_2d(nx, ny, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_2d(nx, ny, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!fwd_ || !bwd_) throw std::runtime_error("Spectral2D: FFTW plan creation failed");
}

Spectral2D::~Spectral2D() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
    fftw_free(buf_);
}

void Spectral2D::forward() { fftw_execute(static_cast<fftw_plan>(fwd_)); }

void Spectral2D::backward() { fftw_execute(static_cast<fftw_plan>(bwd_)); }

std::vector<double> fft_wavenumbers(int n, double half_width) {
    if (!power_of_two(n) || !(half_width > 0.0))
        throw std::invalid_argument("fft_wavenumbers: need power-of-two n, positive width");
    const double dk = M_PI / half_width;  // 2*pi / (2*half_width)
    std::vector<double> k(n);
    for (int j = 0; j < n; ++j) k[j] = dk * (j < n / 2 ? j : j - n);
    return k;
}

}  // namespace ctap
