#include "ctap/double_well.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

#include "ctap/errors.hpp"
#include "ctap/pcf.hpp"

namespace ctap {
namespace {

// All roots of both matching functions sit at nu > -1/2 because the well
// bottom is at zero energy, so a scan floor just above -1/2 sees every
// crossing. Band-n roots never exceed their merged-well values 2n (even)
// and 2n+1 (odd): eigenvalues only move down as the wells separate.
constexpr double kScanFloor = -0.4999;
constexpr double kScanStep = 0.05;

double bisect(const std::function<double(double)>& f, double a, double b, double fa) {
    while (b - a > 1e-13) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    return 0.5 * (a + b);
}

// (index_wanted+1)-th sign change of f above the scan floor. Within one
// parity consecutive roots are ~2 apart, far wider than the scan step, so
// counting crossings from the bottom picks the band unambiguously.
double nth_root(const std::function<double(double)>& f, int index_wanted, double nu_max,
                const char* parity, double d) {
    double a = kScanFloor;
    double fa = f(a);
    int found = 0;
    for (int k = 1;; ++k) {
        const double b = kScanFloor + kScanStep * k;
        if (b > nu_max) break;
        const double fb = f(b);
        if (fb == 0.0) {
            if (++found > index_wanted) return b;
            a = b + 1e-9;  // reseed past the node so it is not counted twice
            fa = f(a);
            continue;
        }
        if ((fa < 0.0) != (fb < 0.0)) {
            if (++found > index_wanted) return bisect(f, a, b, fa);
        }
        a = b;
        fa = fb;
    }
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "double_well_doublet: %s root %d not resolvable at d = %.6g", parity,
                  index_wanted, d);
    throw bracket_error(buf);
}

}  // namespace

WellDoublet double_well_doublet(double separation_d, int band_n) {
    if (!(separation_d >= 0.0) || separation_d > 40.0 * std::sqrt(2.0))
        throw std::invalid_argument("double_well_doublet: separation out of range");
    if (band_n != 0 && band_n != 1)
        throw std::invalid_argument("double_well_doublet: band must be 0 or 1");

    const double xm = -separation_d / std::sqrt(2.0);
    const double nu_max = band_n + 2.4;  // above the merged-well odd index 2*band+1

    const double nu_even =
        nth_root([xm](double nu) { return pcf_d(nu, xm).derivative; }, band_n, nu_max, "even",
                 separation_d);
    const double nu_odd =
        nth_root([xm](double nu) { return pcf_d(nu, xm).value; }, band_n, nu_max, "odd",
                 separation_d);

    WellDoublet out;
    out.separation_d = separation_d;
    out.band_n = band_n;
    out.nu_even = nu_even;
    out.nu_odd = nu_odd;
    out.tunneling_J = std::max(0.0, 0.5 * (nu_odd - nu_even));
    out.site_energy_eps = 0.5 * (nu_even + nu_odd) + 0.5;
    return out;
}

}  // namespace ctap
