#include "ctap/pcf.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "ctap/errors.hpp"

// Evaluation strategy, by region of the real axis:
//
//   -20 < x < 6   ascending series in the two even/odd Kummer solutions of the
//                 Weber equation. On the negative axis the series combination is
//                 well conditioned because the recessive + dominant mix it
//                 computes is itself the growing object; on the positive axis
//                 the two terms cancel like exp(x^2/2), which costs
//                 ~0.217*x^2 digits and is the reason the seam sits at x = 6
//                 rather than 8 (at +8 the whole double mantissa is gone,
//                 while the asymptotic series is already at roundoff by +6).
//
//   x >= 6        Poincare expansion D_nu ~ e^{-x^2/4} x^nu * S1(x), truncated
//                 at its smallest term.
//
//   x <= -20      connection formula
//                   D_nu(-t) = cos(pi nu) D_nu(t) + sqrt(2 pi)/Gamma(-nu) V-part
//                 with both pieces expanded asymptotically. By t = 20 the
//                 dominant-branch sum is converged to ~1e-13 even for nu near 6,
//                 while the ascending series loses digits to its growing-term
//                 roundoff (and overflows outright past |x| ~ 37). Every physical
//                 matching argument (|x| <= ~8.5) stays on the series branch.

namespace ctap {
namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// sin(pi z), cos(pi z) with exact argument reduction so near-integer z loses
// no precision (std::sin(M_PI*z) would be off by ~1e-16*z near the zeros).
double sin_pi(double z) {
    double r = z - std::round(z);
    double s = std::sin(kPi * r);
    return (static_cast<long long>(std::llround(z - r)) % 2 != 0) ? -s : s;
}

double cos_pi(double z) {
    double r = z - std::round(z);
    double c = std::cos(kPi * r);
    return (static_cast<long long>(std::llround(z - r)) % 2 != 0) ? -c : c;
}

// 1/Gamma(z), returning exactly 0 at the poles z = 0, -1, -2, ...
double rgamma(double z) {
    if (z > 0.5) return 1.0 / std::tgamma(z);
    // Reflection: 1/Gamma(z) = Gamma(1-z) sin(pi z) / pi.
    return std::tgamma(1.0 - z) * sin_pi(z) / kPi;
}

// Kummer M(alpha, beta, w) and dM/dw by ascending series (w >= 0 here).
struct KummerPair {
    double m;
    double dm;
};

KummerPair kummer_with_derivative(double alpha, double beta, double w) {
    double term = 1.0;  // term_k = (alpha)_k / ((beta)_k k!) w^k
    double m = 1.0;
    double dm = 0.0;
    const int kmax = 6000;
    int quiet = 0;
    for (int k = 0; k < kmax; ++k) {
        double s = term * (alpha + k) / (beta + k);  // = dterm_{k+1}
        dm += s;
        term = s * w / (k + 1);
        m += term;
        if (std::abs(term) <= 1e-17 * std::abs(m) && std::abs(s) <= 1e-17 * std::abs(dm) + 1e-300) {
            if (++quiet >= 2) return {m, dm};
        } else {
            quiet = 0;
        }
    }
    throw convergence_error("kummer series did not converge (w too large)");
}

// Ascending-series evaluation. Valid for any x; accurate for -36 < x < 6.
PcfValue series_eval(double nu, double x) {
    const double w = 0.5 * x * x;
    KummerPair m1 = kummer_with_derivative(-0.5 * nu, 0.5, w);
    KummerPair m2 = kummer_with_derivative(0.5 * (1.0 - nu), 1.5, w);

    const double sqrt_pi = std::sqrt(kPi);
    const double c1 = sqrt_pi * std::exp2(0.5 * nu) * rgamma(0.5 * (1.0 - nu));
    const double c2 = -sqrt_pi * std::exp2(0.5 * (nu + 1.0)) * rgamma(-0.5 * nu);

    const double damp = std::exp(-0.5 * w);
    const double u1 = damp * m1.m;
    const double u2 = x * damp * m2.m;
    const double du1 = x * damp * (m1.dm - 0.5 * m1.m);
    const double du2 = damp * (m2.m * (1.0 - w) + 2.0 * w * m2.dm);

    return {c1 * u1 + c2 * u2, c1 * du1 + c2 * du2};
}

// Asymptotic sum S(t) = sum_s c_s t^{-2s} and its t-derivative, where
//   c_{s+1}/c_s = sign * (p + 2s)(p + 2s + 1) / (2 (s+1) t^2).
// Truncated at the smallest term (optimal truncation).
struct AsymSum {
    double s;
    double ds;
};

AsymSum asym_sum(double p, double sign, double t) {
    double c = 1.0;
    double sum = 1.0;
    double dsum = 0.0;
    const double inv2t2 = 1.0 / (2.0 * t * t);
    for (int s = 0; s < 400; ++s) {
        double cnext = c * sign * (p + 2 * s) * (p + 2 * s + 1) * inv2t2 / (s + 1);
        if (std::abs(cnext) >= std::abs(c) || std::abs(cnext) < 1e-18 * std::abs(sum)) {
            if (std::abs(cnext) < std::abs(c)) {
                sum += cnext;
                dsum += cnext * (-2.0 * (s + 1)) / t;
            }
            return {sum, dsum};
        }
        c = cnext;
        sum += c;
        dsum += c * (-2.0 * (s + 1)) / t;
    }
    return {sum, dsum};
}

// Recessive branch A(t) = e^{-t^2/4} t^nu S1(t) and dA/dt, for t >= 6.
void recessive_branch(double nu, double t, double* a, double* da) {
    AsymSum s1 = asym_sum(-nu, -1.0, t);
    double pref = std::exp(-0.25 * t * t) * std::pow(t, nu);
    *a = pref * s1.s;
    *da = pref * ((-0.5 * t + nu / t) * s1.s + s1.ds);
}

PcfValue asym_positive(double nu, double x) {
    double a, da;
    recessive_branch(nu, x, &a, &da);
    return {a, da};
}

PcfValue asym_negative(double nu, double x) {
    const double t = -x;
    double a, da;
    recessive_branch(nu, t, &a, &da);

    // Dominant branch B(t) = e^{+t^2/4} t^{-nu-1} S2(t).
    AsymSum s2 = asym_sum(nu + 1.0, 1.0, t);
    const double pref = std::exp(0.25 * t * t) * std::pow(t, -nu - 1.0);
    const double b = pref * s2.s;
    const double db = pref * ((0.5 * t - (nu + 1.0) / t) * s2.s + s2.ds);

    const double cp = cos_pi(nu);
    const double k = -std::sqrt(2.0 * kPi) * std::tgamma(1.0 + nu) * sin_pi(nu) / kPi;

    // d/dx = -d/dt on the negative axis.
    return {cp * a + k * b, -(cp * da + k * db)};
}

}  // namespace

PcfValue pcf_d(double nu, double x) {
    if (!(std::isfinite(nu) && std::isfinite(x)))
        throw std::invalid_argument("pcf_d: non-finite argument");
    if (!(nu > -1.0 && nu < 6.0)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "pcf_d: order nu = %.17g outside (-1, 6)", nu);
        throw std::invalid_argument(buf);
    }
    if (!(std::abs(x) <= 40.0)) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "pcf_d: argument x = %.17g outside [-40, 40]", x);
        throw std::invalid_argument(buf);
    }

    if (x >= 6.0) return asym_positive(nu, x);
    if (x <= -20.0) return asym_negative(nu, x);
    return series_eval(nu, x);
}

}  // namespace ctap
