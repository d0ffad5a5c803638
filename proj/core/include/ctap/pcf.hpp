#pragma once

namespace ctap {

// Weber parabolic cylinder function D_nu(x) together with d/dx D_nu(x).
struct PcfValue {
    double value = 0.0;
    double derivative = 0.0;
};

// Evaluates D_nu(x) for -1 < nu < 6 and |x| <= 40.
//
// D_nu solves y'' + (nu + 1/2 - x^2/4) y = 0 and decays like exp(-x^2/4) x^nu
// as x -> +inf. For non-integer nu it grows like exp(+x^2/4) as x -> -inf; at
// integer nu = n it reduces to 2^{-n/2} H_n(x/sqrt 2) exp(-x^2/4).
//
// Throws std::invalid_argument outside the supported domain.
PcfValue pcf_d(double nu, double x);

}  // namespace ctap
