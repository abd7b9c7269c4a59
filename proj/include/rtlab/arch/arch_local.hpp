#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "rtlab/errors.hpp"
#include "rtlab/numerics/quadrature.hpp"
#include "rtlab/numerics/special.hpp"
#include "rtlab/numerics/summation.hpp"

namespace rtlab::arch {

using cplx = std::complex<double>;
using bigint = boost::multiprecision::cpp_int;

// Real 2x2 matrix [[a, b], [c, d]].
struct Mat2 {
    double a, b, c, d;
    double det() const { return a * d - b * c; }
};

inline double default_formal_degree(int k) { return (k - 1) / 2.0; }

struct ArchParams {
    int k = 4;
    cplx s1 = 0.0;
    cplx s2 = 0.0;
    double d = 1.5;

    ArchParams() = default;
    ArchParams(int weight, cplx a = 0.0, cplx b = 0.0) : ArchParams(weight, a, b, default_formal_degree(weight)) {}
    ArchParams(int weight, cplx a, cplx b, double degree) : k(weight), s1(a), s2(b), d(degree) {
        if (k < 4 || k % 2) throw domain_error("ArchParams: k must be even and >= 4");
        const double h = k / 2.0;
        if (!(std::abs(s1.real()) < h) || !(std::abs(s2.real()) < h))
            throw domain_error("ArchParams: Re s1, Re s2 must lie in (-k/2, k/2)");
    }
    cplx rho() const { return k / 2.0 - s1; }
    cplx sigma() const { return k / 2.0 + s2; }
};

// d (2 sqrt(det g))^k / (a + d + i(b - c))^k for det g > 0, else 0.
inline cplx f_infty(const Mat2& g, int k, double d) {
    const double det = g.det();
    if (det == 0.0) throw domain_error("f_infty: singular matrix");
    if (det < 0.0) return 0.0;
    const cplx den(g.a + g.d, g.b - g.c);
    return d * std::pow(2.0 * std::sqrt(det), k) / std::pow(den, k);
}

inline bigint factorial(int n) {
    bigint r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline bigint binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    return factorial(n) / (factorial(r) * factorial(n - r));
}

// 1 + sum_{n=0}^{k/2-2} C(k, 2n+1) (-1)^{k/2-n} (k/2+n-1)! (k/2-n-2)!, exactly.
inline bigint h_of_k(int k) {
    if (k < 4 || k % 2) throw domain_error("h_of_k: k must be even and >= 4");
    const int m = k / 2;
    bigint h = 1;
    for (int n = 0; n <= m - 2; ++n) {
        bigint term = binomial(k, 2 * n + 1) * factorial(m + n - 1) * factorial(m - n - 2);
        if ((m - n) % 2) h -= term;
        else h += term;
    }
    return h;
}

// k ((k/2-1)!)^2 / (k-1)!
inline double factorial_ratio(int k) {
    const int m = k / 2;
    bigint f = factorial(m - 1);
    return (k * f * f).convert_to<double>() / factorial(k - 1).convert_to<double>();
}

inline double c_of_k(int k, double d) {
    return d * std::ldexp(1.0, k) * std::numbers::pi * factorial_ratio(k) * h_of_k(k).convert_to<double>();
}

inline double c_of_k(int k) { return c_of_k(k, default_formal_degree(k)); }

// Factors I_{j,1} = B((k-j-s)/2, (k+j+s)/2), I_{j,2} = B(k/2+s2, k/2+s1), s = s1 + s2.
inline cplx I_j1(int k, int j, cplx s1, cplx s2) {
    const cplx s = s1 + s2;
    return numerics::beta((double(k - j) - s) / 2.0, (double(k + j) + s) / 2.0);
}

inline cplx I_j2(int k, cplx s1, cplx s2) { return numerics::beta(k / 2.0 + s2, k / 2.0 + s1); }

inline cplx I_j_closed(int k, int j, cplx s1, cplx s2) {
    if (j % 2 == 0) return 0.0;
    return I_j1(k, j, s1, s2) * I_j2(k, s1, s2);
}

// The I_j double integral itself, the a-line folded onto (0, inf), b over (0, inf).
// For even j the a-integrand is odd; when j = k the fold is a principal value.
inline numerics::QuadratureResult<cplx> I_j_quadrature(int k, int j, cplx s1, cplx s2,
                                                       const numerics::QuadratureSpec& spec = {1e-11, 1e-16}) {
    const cplx s = s1 + s2;
    const double odd_sign = ((1 + k - j) % 2 == 0) ? 1.0 : -1.0;  // (a/|a|)^{1+k-j} at a < 0
    // inner variable b = (1 + a) t keeps the peak near t = 1 for large a
    auto integrand = [&](double a, double t) -> cplx {
        const double scale = 1.0 + a;
        const double b = scale * t;
        const double q = a * a + (b + 1) * (b + 1);
        const cplx g = scale * std::pow(b, k / 2.0 + s2 - 1.0) * std::pow(a, double(k - j) - s - 1.0) *
                       std::pow(b + 1, j) / std::pow(q, k);
        return g + odd_sign * g;
    };
    return numerics::integrate_2d(integrand, 0.0, INFINITY, 0.0, INFINITY, spec, spec);
}

// Closed form 2^k d sum_{j odd} C(k, j) i^{k-j} I_j.
inline cplx i_infty_nplus(const ArchParams& p) {
    numerics::ComplexCompensatedSum sum;
    for (int j = 1; j <= p.k; j += 2) {
        const cplx ipow = std::pow(cplx(0, 1), p.k - j);
        sum += binomial(p.k, j).convert_to<double>() * ipow * I_j_closed(p.k, j, p.s1, p.s2);
    }
    return std::ldexp(1.0, p.k) * p.d * sum.value();
}

// The display -2^k i pi d k((k/2-1)!)^2 h(k) / (k-1)!, as printed.
inline cplx i_infty_nplus_printed(int k, double d) {
    return cplx(0, -1) * std::ldexp(1.0, k) * std::numbers::pi * d * factorial_ratio(k) *
           h_of_k(k).convert_to<double>();
}

// n^+ integrand of (a, b) with the kernel of the proof display,
// d 2^k b^{k/2} / (b + 1 - i a)^k; this is the complex conjugate of f_infty([[b, a], [0, 1]]).
inline cplx nplus_integrand(const ArchParams& p, double a, double b) {
    if (b <= 0.0 || a == 0.0) return 0.0;
    const double sgn = a > 0 ? 1.0 : -1.0;
    return p.d * std::ldexp(1.0, p.k) * std::pow(b, p.k / 2.0 + p.s2 - 1.0) *
           std::pow(std::abs(a), -p.s1 - p.s2 - 1.0) * sgn / std::pow(cplx(b + 1, -a), p.k);
}

// n^- integrand, d 2^k a^{k/2} / ((a + 1) + i b)^k sgn(b) |a|^{-s1} |b|^{s1+s2} / |ab|; zero for a < 0.
inline cplx nminus_integrand(const ArchParams& p, double a, double b) {
    if (a <= 0.0 || b == 0.0) return 0.0;
    const double sgn = b > 0 ? 1.0 : -1.0;
    return p.d * std::ldexp(1.0, p.k) * std::pow(a, p.k / 2.0 - p.s1 - 1.0) *
           std::pow(std::abs(b), p.s1 + p.s2 - 1.0) * sgn / std::pow(cplx(a + 1, b), p.k);
}

namespace detail {

// (w^{-k} - conj(w)^{-k}) for w = u + i t, t >= 0, computed in polar form: -2i |w|^{-k} sin(k phi).
inline cplx odd_fold(int k, double u, double t) {
    const double r = std::hypot(u, t), phi = std::atan2(t, u);
    return cplx(0.0, -2.0) * std::pow(r, -k) * std::sin(k * phi);
}

}  // namespace detail

// Direct quadrature of the defining n^+ double integral; the a-line is folded onto (0, inf).
inline numerics::QuadratureResult<cplx> i_infty_nplus_quadrature(const ArchParams& p,
                                                                 const numerics::QuadratureSpec& spec = {1e-10,
                                                                                                         1e-16}) {
    const double scale = p.d * std::ldexp(1.0, p.k);
    auto integrand = [&](double b, double a) -> cplx {
        // (b+1-ia)^{-k} - (b+1+ia)^{-k} = -(odd_fold)
        return -scale * std::pow(b, p.k / 2.0 + p.s2 - 1.0) * std::pow(a, -p.s1 - p.s2 - 1.0) *
               detail::odd_fold(p.k, b + 1.0, a);
    };
    return numerics::integrate_2d(integrand, 0.0, INFINITY, 0.0, INFINITY, spec, spec);
}

// Direct quadrature of the n^- double integral; b-line folded, a < 0 contributes nothing.
inline numerics::QuadratureResult<cplx> i_infty_nminus(const ArchParams& p,
                                                       const numerics::QuadratureSpec& spec = {1e-10, 1e-16}) {
    const double scale = p.d * std::ldexp(1.0, p.k);
    auto integrand = [&](double a, double b) -> cplx {
        // ((a+1)+ib)^{-k} - ((a+1)-ib)^{-k} = odd_fold
        return scale * std::pow(a, p.k / 2.0 - p.s1 - 1.0) * std::pow(b, p.s1 + p.s2 - 1.0) *
               detail::odd_fold(p.k, a + 1.0, b);
    };
    return numerics::integrate_2d(integrand, 0.0, INFINITY, 0.0, INFINITY, spec, spec);
}

}  // namespace rtlab::arch
