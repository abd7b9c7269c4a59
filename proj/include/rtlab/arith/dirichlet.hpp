#pragma once

#include <cmath>
#include <cstdint>

#include "rtlab/arith/characters.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/numerics/summation.hpp"

namespace rtlab::arith {

namespace detail {

// psi(y) for y >= 10 from the asymptotic series.
inline double digamma_asymptotic(double y) {
    static constexpr double b2j_over_2j[] = {1.0 / 12, -1.0 / 120, 1.0 / 252, -1.0 / 240, 1.0 / 132, -691.0 / 32760};
    const double inv2 = 1.0 / (y * y);
    double p = inv2, corr = 0.0;
    for (double c : b2j_over_2j) {
        corr += c * p;
        p *= inv2;
    }
    return std::log(y) - 0.5 / y - corr;
}

// sum_{n <= K q} chi(n)/n - (1/q) sum_a chi(a) psi(K + a/q)
inline double L1_blocks(const QuadraticCharacter& chi, std::int64_t K) {
    const std::int64_t q = chi.conductor();
    numerics::CompensatedSum s;
    for (std::int64_t n = 1; n <= K * q; ++n) {
        const int c = chi(n);
        if (c) s += double(c) / double(n);
    }
    for (std::int64_t a = 1; a <= q; ++a) {
        const int c = chi(a);
        if (c) s += -double(c) * digamma_asymptotic(double(K) + double(a) / double(q)) / double(q);
    }
    return s.value();
}

}  // namespace detail

// L(1, chi_D): the character sum over K full periods plus the Euler-Maclaurin tail per residue class.
inline double dirichlet_L1(std::int64_t D, double tol = 1e-12) {
    QuadraticCharacter chi(D);
    const double a = detail::L1_blocks(chi, 24), b = detail::L1_blocks(chi, 48);
    if (std::abs(a - b) > tol * std::max(1.0, std::abs(b)))
        throw accuracy_error("dirichlet_L1: block sums disagree beyond tolerance");
    return b;
}

// L(0, chi) = -(1/|D|) sum_{a=1}^{|D|} chi(a) a.
inline double dirichlet_L0_direct(std::int64_t D) {
    QuadraticCharacter chi(D);
    const std::int64_t q = chi.conductor();
    std::int64_t s = 0;
    for (std::int64_t a = 1; a <= q; ++a) s += chi(a) * a;
    return -double(s) / double(q);
}

// L(0, chi) = (|D|^{1/2} / pi) L(1, chi) for odd chi.
inline double dirichlet_L0_functional(std::int64_t D) {
    return std::sqrt(double(-D)) / M_PI * dirichlet_L1(D);
}

inline double dirichlet_L(std::int64_t D, double s) {
    if (s == 1.0) return dirichlet_L1(D);
    if (s == 0.0) {
        const double a = dirichlet_L0_direct(D), b = dirichlet_L0_functional(D);
        if (std::abs(a - b) > 1e-10 * std::max(1.0, std::abs(a)))
            throw accuracy_error("dirichlet_L: the two L(0, chi) paths disagree");
        return a;
    }
    throw unsupported_input_error("dirichlet_L: only s = 0 and s = 1 are implemented");
}

}  // namespace rtlab::arith
