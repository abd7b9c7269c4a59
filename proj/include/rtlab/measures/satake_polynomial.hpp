#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "rtlab/arith/primes.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/measures/satake_measure.hpp"
#include "rtlab/numerics/summation.hpp"

namespace rtlab::measures {

using cplx = std::complex<double>;

// psi_n in the basis {X'_0 = 1, X_1, X_2, ...}, X_j(2 cos t) = 2 cos(j t).
class SatakePolynomial {
public:
    SatakePolynomial(int n, int p) : n_(n), p_(p), coeffs_(n + 1, 0.0) {
        if (n < 0) throw domain_error("satake_poly: n must be >= 0");
        if (!arith::is_prime(p)) throw domain_error("satake_poly: p must be prime");
        coeffs_[n] = 1.0;
        const double lower = 1.0 - 1.0 / p;
        for (int j = n - 2; j >= 0; j -= 2) coeffs_[j] = lower;
    }

    int index() const { return n_; }
    int prime() const { return p_; }
    const std::vector<double>& coefficients() const { return coeffs_; }

    // Evaluation through the basis at a complex point x = y + 1/y.
    cplx evaluate_at(cplx y) const {
        numerics::ComplexCompensatedSum s;
        for (int j = 0; j <= n_; ++j) {
            if (coeffs_[j] == 0.0) continue;
            cplx basis = (j == 0) ? cplx(1.0) : std::pow(y, j) + std::pow(y, -j);
            s += coeffs_[j] * basis;
        }
        return s.value();
    }

    double operator()(double x) const {
        if (x < -2.0 || x > 2.0) throw domain_error("SatakePolynomial: x outside [-2, 2]");
        const double t = std::acos(x / 2.0);
        numerics::CompensatedSum s;
        for (int j = 0; j <= n_; ++j) {
            if (coeffs_[j] == 0.0) continue;
            s += coeffs_[j] * (j == 0 ? 1.0 : 2.0 * std::cos(j * t));
        }
        return s.value();
    }

private:
    int n_;
    int p_;
    std::vector<double> coeffs_;
};

inline SatakePolynomial satake_poly(int n, int p) { return SatakePolynomial(n, p); }

// phi_n(s) = p^{n/2} psi_n(p^s + p^{-s}).
inline cplx phi_n(int n, int p, cplx s) {
    const cplx y = std::pow(double(p), s);
    return std::pow(double(p), 0.5 * n) * satake_poly(n, p).evaluate_at(y);
}

struct CosetOracleResult {
    cplx value;
    long long coset_count = 0;
};

// Trace of pi_s(f_n) from the single cosets [[p^a, t], [0, p^b]] K, a + b = n,
// t mod p^a with gcd(p^a, t, p^b) = 1. Each coset contributes |p^a / p^b|^{s + 1/2}.
inline CosetOracleResult satake_coset_oracle(int n, int p, cplx s) {
    if (n < 0) throw domain_error("satake_coset_oracle: n must be >= 0");
    if (!arith::is_prime(p)) throw domain_error("satake_coset_oracle: p must be prime");
    CosetOracleResult out;
    numerics::ComplexCompensatedSum sum;
    for (int a = 0; a <= n; ++a) {
        const int b = n - a;
        const long long pa = arith::ipow(p, a);
        const cplx character = std::pow(double(p), -double(a - b) * (s + 0.5));
        long long count = 0;
        for (long long t = 0; t < pa; ++t) {
            bool primitive = (a == 0 || b == 0) || (t % p != 0);
            if (primitive) ++count;
        }
        out.coset_count += count;
        sum += double(count) * character;
    }
    out.value = sum.value();
    return out;
}

// int psi_n dmu by quadrature.
inline numerics::QuadratureResult<double> moment(const SatakeMeasure& m, int n,
                                                 const numerics::QuadratureSpec& spec = {1e-13, 1e-15}) {
    if (n < 0) throw domain_error("moment: n must be >= 0");
    SatakePolynomial psi(n, m.p);
    return integrate_over_theta([&](double x) { return psi(x) * density(m, x); }, -2.0, 2.0, spec);
}

// int X_n dmu with X'_0 = 1.
inline numerics::QuadratureResult<double> basis_moment(const SatakeMeasure& m, int n,
                                                       const numerics::QuadratureSpec& spec = {1e-13, 1e-16}) {
    return integrate_over_theta(
        [&](double x) {
            double b = n == 0 ? 1.0 : 2.0 * std::cos(n * std::acos(x / 2.0));
            return b * density(m, x);
        },
        -2.0, 2.0, spec);
}

inline numerics::QuadratureResult<double> sato_tate_basis_moment(int n,
                                                                 const numerics::QuadratureSpec& spec = {1e-13,
                                                                                                         1e-16}) {
    return integrate_over_theta(
        [&](double x) {
            double b = n == 0 ? 1.0 : 2.0 * std::cos(n * std::acos(x / 2.0));
            return b * sato_tate_density(x);
        },
        -2.0, 2.0, spec);
}

struct SatoTateLimitRow {
    int p;
    double moment;
    double target;
    double discrepancy;
};

// int X_n dmu_{p, delta} along a sequence of primes, against the semicircle value.
inline std::vector<SatoTateLimitRow> sato_tate_limit_check(int delta, int n, const std::vector<int>& primes) {
    const double target = sato_tate_basis_moment(n).value;
    std::vector<SatoTateLimitRow> rows;
    for (int p : primes) {
        double m = basis_moment(SatakeMeasure(p, delta), n).value;
        rows.push_back({p, m, target, std::abs(m - target)});
    }
    return rows;
}

}  // namespace rtlab::measures
