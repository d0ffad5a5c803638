#pragma once

#include <complex>
#include <vector>

namespace ctap {

// Uniform periodic grid on [-lx, lx) x [-ly, ly), power-of-two sizes.
// Fields are stored row-major with x slow and y fast: index i*ny + j.
struct Grid2D {
    int nx = 0, ny = 0;
    double lx = 0.0, ly = 0.0;
    double dx = 0.0, dy = 0.0;
    std::vector<double> x, y;    // node coordinates
    std::vector<double> kx, ky;  // spectral wavenumbers

    static Grid2D make(int nx, int ny, double lx, double ly);
    size_t size() const { return static_cast<size_t>(nx) * ny; }
    double cell() const { return dx * dy; }
};

struct GridField {
    Grid2D grid;
    std::vector<std::complex<double>> amplitudes;  // grid.size() entries
};

double field_norm(const GridField& f);  // integral of |psi|^2
void normalize(GridField& f);

}  // namespace ctap
