#pragma once

#include <complex>
#include <vector>

namespace ctap {

// In-place 2D c2c FFT pair on an owned nx*ny row-major buffer (x slow,
// y fast). Transforms are unnormalized: backward(forward(a)) = nx*ny * a.
// Plan construction is serialized internally (the FFTW planner is not
// thread-safe); executing distinct instances concurrently is fine.
class Spectral2D {
public:
    Spectral2D(int nx, int ny);
    ~Spectral2D();
    Spectral2D(const Spectral2D&) = delete;
    Spectral2D& operator=(const Spectral2D&) = delete;

    std::complex<double>* data() { return buf_; }
    const std::complex<double>* data() const { return buf_; }
    int nx() const { return nx_; }
    int ny() const { return ny_; }

    void forward();
    void backward();

private:
    int nx_, ny_;
    std::complex<double>* buf_;
    void* fwd_;
    void* bwd_;
};

// Angular wavenumbers of the length-n periodic domain [-half_width,
// +half_width): index j maps to 2*pi*j/L for j < n/2 and 2*pi*(j-n)/L
// beyond, the standard discrete spectrum.
std::vector<double> fft_wavenumbers(int n, double half_width);

}  // namespace ctap
