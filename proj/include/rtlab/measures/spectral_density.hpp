#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "rtlab/arith/primes.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/measures/satake_measure.hpp"
#include "rtlab/numerics/summation.hpp"

namespace rtlab::measures {

using cplx = std::complex<double>;

// (delta^m - delta^{-m}) / (delta - delta^{-1}) as the finite sum sum_j delta^{m-1-2j}.
inline cplx delta_quotient(cplx delta, int m) {
    if (m <= 0) return m == 0 ? cplx(0.0) : -delta_quotient(delta, -m);
    numerics::ComplexCompensatedSum s;
    for (int j = 0; j < m; ++j) s += std::pow(delta, m - 1 - 2 * j);
    return s.value();
}

inline cplx series_coefficient_C(int p, cplx delta, int n) {
    return std::pow(delta, n) + std::pow(delta, -n) - double(p - 1) * delta_quotient(delta, n - 1);
}

inline cplx series_coefficient_A(int p, cplx delta, int n) {
    return std::pow(delta, 2 * n) + std::pow(delta, -2 * n) - double(p - 1) * delta_quotient(delta, 2 * n - 1);
}

inline cplx series_coefficient_B(int p, cplx delta, int n) {
    return std::pow(delta, 2 * n + 1) + std::pow(delta, -2 * n - 1) - double(p - 1) * delta_quotient(delta, 2 * n);
}

class SpectralDensity {
public:
    SpectralDensity(int p, cplx delta) : p_(p), delta_(delta) {
        if (!arith::is_prime(p)) throw domain_error("SpectralDensity: p must be prime");
        if (delta == 0.0) throw domain_error("SpectralDensity: delta must be nonzero");
    }

    int prime() const { return p_; }
    cplx delta() const { return delta_; }

    cplx T(cplx s) const { return std::pow(double(p_), s - 0.5); }

    // (1 - p T^2) / ((T - delta)(T - delta^{-1})).
    cplx closed_form(cplx s) const {
        const cplx t = T(s);
        const cplx den = (t - delta_) * (t - 1.0 / delta_);
        if (std::abs(den) < 1e-300) throw pole_error("spectral_density: T = delta^{+-1}");
        // numerator written as 1 - p^{2s}, which is exact at s = 0
        return (1.0 - std::pow(double(p_), 2.0 * s)) / den;
    }

    // 1 + sum_{n=1}^{terms} C_n T^n.
    cplx series(cplx s, int terms) const {
        const cplx t = T(s);
        numerics::ComplexCompensatedSum sum;
        sum += 1.0;
        cplx tn = 1.0;
        for (int n = 1; n <= terms; ++n) {
            tn *= t;
            sum += series_coefficient_C(p_, delta_, n) * tn;
        }
        return sum.value();
    }

    // F_ev + F_od with F_od summed from its B_0 term.
    cplx even_odd_series(cplx s, int terms) const {
        const cplx t = T(s);
        numerics::ComplexCompensatedSum sum;
        sum += 1.0;
        for (int n = 1; 2 * n <= terms; ++n) sum += series_coefficient_A(p_, delta_, n) * std::pow(t, 2 * n);
        for (int n = 0; 2 * n + 1 <= terms; ++n) sum += series_coefficient_B(p_, delta_, n) * std::pow(t, 2 * n + 1);
        return sum.value();
    }

    // Rigorous bound on |sum_{n > terms} C_n T^n| from |C_n| <= 2 max(|d|,|1/d|)^n + (p-1) n max(...)^{n}.
    double truncation_bound(cplx s, int terms) const {
        const double r = std::max(std::abs(delta_), 1.0 / std::abs(delta_)) * std::abs(T(s));
        if (r >= 1.0) return INFINITY;
        double bound = 0.0, rn = std::pow(r, terms + 1);
        for (int n = terms + 1; n < terms + 20000 && rn > 1e-300; ++n, rn *= r)
            bound += (2.0 + double(p_ - 1) * n) * rn;
        return bound;
    }

    // (F(s) + F(-s)) / 2.
    cplx real_part(cplx s) const { return 0.5 * (closed_form(s) + closed_form(-s)); }

    // The printed mu(s) display (delta = 1).
    cplx mu_display(cplx s) const {
        const double p = p_;
        const cplx num = (1.0 - 1.0 / p) * (2.0 - std::pow(p, 2.0 * s) - std::pow(p, -2.0 * s));
        const cplx d = 1.0 + 1.0 / p - std::pow(p, -0.5 + s) - std::pow(p, -0.5 - s);
        return 0.5 * num / (d * d);
    }

    // The printed mu(s) display rewritten in x = p^s + p^{-s}.
    double mu_display_x(double x) const {
        const double p = p_;
        const double d = 1.0 + 1.0 / p - x / std::sqrt(p);
        return 0.5 * (1.0 - 1.0 / p) * (4.0 - x * x) / (d * d);
    }

private:
    int p_;
    cplx delta_;
};

inline cplx spectral_density(int p, cplx delta, cplx s) { return SpectralDensity(p, delta).closed_form(s); }

// The point s = i theta / log p with x = 2 cos theta.
inline cplx s_from_x(int p, double x) { return cplx(0.0, std::acos(x / 2.0) / std::log(double(p))); }

// Transports (log p / pi) mu(s) ds to the x-line and compares with the mu_+ density.
inline double density_change_of_variables_check(int p, int grid = 1000) {
    SpectralDensity F(p, 1.0);
    SatakeMeasure plus(p, 1);
    double worst = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double x = -2.0 + 4.0 * i / (grid - 1);
        double transported = 0.0;
        if (x > -2.0 && x < 2.0) {
            const double mu = F.real_part(s_from_x(p, x)).real();
            transported = mu / (std::numbers::pi * std::sqrt(4.0 - x * x));
        }
        worst = std::max(worst, std::abs(transported - density(plus, x)));
    }
    return worst;
}

}  // namespace rtlab::measures
