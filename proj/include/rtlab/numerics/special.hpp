#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "rtlab/errors.hpp"
#include "rtlab/numerics/summation.hpp"

namespace rtlab::numerics {

using cplx = std::complex<double>;

inline bool is_nonpositive_integer(cplx z) {
    return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

namespace detail {

// Stirling series for log Gamma, valid for Re z >= 15.
inline cplx log_gamma_stirling(cplx z) {
    static constexpr double coeff[] = {
        1.0 / 12.0,          -1.0 / 360.0,  1.0 / 1260.0, -1.0 / 1680.0,
        1.0 / 1188.0,        -691.0 / 360360.0, 1.0 / 156.0, -3617.0 / 122400.0,
    };
    const double half_log_2pi = 0.5 * std::log(2.0 * std::numbers::pi);
    cplx inv = 1.0 / z;
    cplx inv2 = inv * inv;
    cplx series = 0.0;
    cplx p = inv;
    for (double c : coeff) {
        series += c * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + half_log_2pi + series;
}

}  // namespace detail

// Continuous branch of log Gamma on Re z >= 1/2, reflection below.
inline cplx log_gamma(cplx z) {
    if (is_nonpositive_integer(z))
        throw pole_error("log_gamma: pole at nonpositive integer");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw domain_error("log_gamma: non-finite argument");
    if (z.imag() == 0.0 && z.real() > 0.0) return std::lgamma(z.real());
    if (z.real() < 0.5) {
        const double pi = std::numbers::pi;
        cplx s = std::sin(pi * z);
        return std::log(pi) - std::log(s) - log_gamma(1.0 - z);
    }
    int shift = 0;
    if (z.real() < 15.0) shift = static_cast<int>(std::ceil(15.0 - z.real()));
    ComplexCompensatedSum corr;
    for (int j = 0; j < shift; ++j) corr += std::log(z + double(j));
    return detail::log_gamma_stirling(z + double(shift)) - corr.value();
}

inline double log_gamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) throw pole_error("log_gamma: pole at nonpositive integer");
    return std::lgamma(x);
}

inline cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

// B(z, w) via the Gamma quotient; symmetric in its arguments bit for bit.
inline cplx beta(cplx z, cplx w) {
    if (is_nonpositive_integer(z + w))
        throw pole_error("beta: z + w at a Gamma pole");
    cplx lz = log_gamma(z);
    cplx lw = log_gamma(w);
    return std::exp((lz + lw) - log_gamma(z + w));
}

inline double beta(double z, double w) { return beta(cplx(z), cplx(w)).real(); }

// Upper incomplete gamma Gamma(a, x) for real a > 0, x >= 0.
inline double upper_incomplete_gamma(double a, double x) {
    if (!(a > 0.0) || x < 0.0) throw domain_error("upper_incomplete_gamma: need a > 0, x >= 0");
    const double lg = std::lgamma(a);
    if (x == 0.0) return std::exp(lg);
    const double eps = 1e-17;
    if (x < a + 1.0) {
        // lower gamma by series, then subtract
        double ap = a, del = 1.0 / a;
        CompensatedSum sum;
        sum += del;
        for (int n = 0; n < 100000; ++n) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum.value()) * eps) break;
        }
        double lower_reg = sum.value() * std::exp(-x + a * std::log(x) - lg);
        return std::exp(lg) * (1.0 - lower_reg);
    }
    // modified Lentz continued fraction
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) break;
    }
    return std::exp(-x + a * std::log(x)) * h;
}

// Gamma(m, x) for a positive integer m: (m-1)! e^{-x} sum_{j<m} x^j/j!.
inline double upper_incomplete_gamma_int(int m, double x) {
    if (m < 1 || x < 0.0) throw domain_error("upper_incomplete_gamma_int: need m >= 1, x >= 0");
    double term = 1.0;
    CompensatedSum sum;
    sum += term;
    for (int j = 1; j < m; ++j) {
        term *= x / j;
        sum += term;
    }
    double fact = 1.0;
    for (int j = 2; j < m; ++j) fact *= j;
    return fact * std::exp(-x) * sum.value();
}

}  // namespace rtlab::numerics
