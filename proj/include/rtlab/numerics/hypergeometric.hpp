#pragma once

#include <cmath>
#include <complex>
#include <utility>

#include "rtlab/errors.hpp"
#include "rtlab/numerics/special.hpp"
#include "rtlab/numerics/summation.hpp"

namespace rtlab::numerics {

struct Hyp2f1Options {
    int max_terms = 2'000'000;
    double series_radius = 0.5;
    // minimum distance of c-a-b from an integer for the 1-z connection formula
    double connection_gap = 0.05;
};

namespace detail {

inline cplx hyp2f1_series(cplx a, cplx b, cplx c, cplx z, int max_terms) {
    ComplexCompensatedSum sum;
    cplx term = 1.0;
    sum += term;
    int small_run = 0;
    for (int n = 0; n < max_terms; ++n) {
        double dn = n;
        term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        sum += term;
        if (term == 0.0) return sum.value();
        if (std::abs(term) <= 1e-17 * std::abs(sum.value())) {
            if (++small_run >= 3) return sum.value();
        } else {
            small_run = 0;
        }
    }
    throw convergence_error("hyp2f1: series did not converge within the term budget");
}

inline double distance_to_integer(cplx w) {
    return std::hypot(w.real() - std::round(w.real()), w.imag());
}

}  // namespace detail

// Gauss hypergeometric function 2F1(a, b; c; z) off the cut [1, inf).
inline cplx hyp2f1(cplx a, cplx b, cplx c, cplx z, const Hyp2f1Options& opt = {}) {
    if (is_nonpositive_integer(c)) throw pole_error("hyp2f1: c is a nonpositive integer");
    if (z.imag() == 0.0 && z.real() >= 1.0) throw domain_error("hyp2f1: z on the cut [1, inf)");
    if (z == 0.0) return 1.0;
    // canonical parameter order so that F(a,b;c;z) and F(b,a;c;z) share one code path
    if (b.real() < a.real() || (b.real() == a.real() && b.imag() < a.imag())) std::swap(a, b);

    const double az = std::abs(z);
    if (az <= opt.series_radius) return detail::hyp2f1_series(a, b, c, z, opt.max_terms);

    // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1))
    const cplx w = z / (z - 1.0);
    if (std::abs(w) <= opt.series_radius)
        return std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, w, opt.max_terms);

    // 1-z connection formula when c-a-b is safely non-integral
    const cplx gap = c - a - b;
    if (std::abs(1.0 - z) <= opt.series_radius && detail::distance_to_integer(gap) >= opt.connection_gap) {
        try {
            cplx one_minus = 1.0 - z;
            cplx t1 = std::exp(log_gamma(c) + log_gamma(gap) - log_gamma(c - a) - log_gamma(c - b)) *
                      detail::hyp2f1_series(a, b, a + b - c + 1.0, one_minus, opt.max_terms);
            cplx t2 = std::pow(one_minus, gap) *
                      std::exp(log_gamma(c) + log_gamma(-gap) - log_gamma(a) - log_gamma(b)) *
                      detail::hyp2f1_series(c - a, c - b, gap + 1.0, one_minus, opt.max_terms);
            return t1 + t2;
        } catch (const pole_error&) {
            // a Gamma factor hit a pole; fall through to the direct series
        }
    }

    // Slower but uniform: whichever of z, z/(z-1) is smaller in modulus, if inside the unit disc.
    if (std::abs(w) < az && std::abs(w) < 1.0)
        return std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, w, opt.max_terms);
    if (az < 1.0) return detail::hyp2f1_series(a, b, c, z, opt.max_terms);
    throw convergence_error("hyp2f1: no convergent transformation for this z");
}

}  // namespace rtlab::numerics
