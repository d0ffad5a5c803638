#include "ctap/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "ctap/spectral.hpp"

namespace ctap {

Grid2D Grid2D::make(int nx, int ny, double lx, double ly) {
    if (!(lx > 0.0) || !(ly > 0.0)) throw std::invalid_argument("Grid2D: widths must be positive");
    Grid2D g;
    g.nx = nx;
    g.ny = ny;
    g.lx = lx;
    g.ly = ly;
    g.kx = fft_wavenumbers(nx, lx);  // validates power-of-two sizes
    g.ky = fft_wavenumbers(ny, ly);
    g.dx = 2.0 * lx / nx;
    g.dy = 2.0 * ly / ny;
    g.x.resize(nx);
    g.y.resize(ny);
    for (int i = 0; i < nx; ++i) g.x[i] = -lx + g.dx * i;
    for (int j = 0; j < ny; ++j) g.y[j] = -ly + g.dy * j;
    return g;
}

double field_norm(const GridField& f) {
    double s = 0.0;
    for (const auto& a : f.amplitudes) s += std::norm(a);
    return s * f.grid.cell();
}

void normalize(GridField& f) {
    const double n = field_norm(f);
    if (!(n > 0.0)) throw std::invalid_argument("normalize: zero field");
    const double scale = 1.0 / std::sqrt(n);
    for (auto& a : f.amplitudes) a *= scale;
}

}  // namespace ctap
