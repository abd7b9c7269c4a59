#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "rtlab/arch/arch_local.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/numerics/hypergeometric.hpp"
#include "rtlab/numerics/quadrature.hpp"
#include "rtlab/numerics/special.hpp"

namespace rtlab::arch {

struct RegularSigns {
    int eps, del, nu;
};

// The two (eps, delta, nu) triples entering I_inf(x) on each side of x = 1.
inline std::array<RegularSigns, 2> regular_triples(double x) {
    if (x < 1.0) return {RegularSigns{-1, 1, 1}, RegularSigns{-1, -1, 1}};
    return {RegularSigns{1, -1, -1}, RegularSigns{1, 1, -1}};
}

// int_0^inf int_0^inf a^{rho-1} b^{sigma-1} / (a x + eps b + delta i (a b + nu))^k da db.
inline numerics::QuadratureResult<cplx> i_prime_quadrature(int k, double x, cplx s1, cplx s2, RegularSigns t,
                                                           const numerics::QuadratureSpec& spec = {1e-10, 1e-16}) {
    const cplx rho = k / 2.0 - s1, sigma = k / 2.0 + s2;
    auto integrand = [&](double a, double b) -> cplx {
        const cplx den(a * x + t.eps * b, t.del * (a * b + t.nu));
        return std::pow(a, rho - 1.0) * std::pow(b, sigma - 1.0) / std::pow(den, k);
    };
    return numerics::integrate_2d(integrand, 0.0, INFINITY, 0.0, INFINITY, spec, spec);
}

// Beta-Beta-2F1 evaluation of the same integral: the inner b-integral gives B(sigma, k-sigma), the
// a-integral int_0^inf a^{rho-1} (a+P)^{sigma-k} (a+Q)^{-sigma} da with P = delta nu i / x, Q = -i delta eps
// gives P^{sigma-k} Q^{rho-sigma} B(rho, k-rho) 2F1(k-sigma, rho; k; 1 - Q/P). All powers principal.
inline cplx i_prime_closed(int k, double x, cplx s1, cplx s2, RegularSigns t) {
    if (!(x > 0.0)) throw domain_error("i_prime_closed: x must be positive");
    const cplx I(0.0, 1.0);
    const cplx rho = k / 2.0 - s1, sigma = k / 2.0 + s2;
    const cplx di = double(t.del) * I;
    const cplx P = double(t.del * t.nu) * I / x;
    const cplx Q = -double(t.del * t.eps) * I;
    const cplx z = 1.0 + double(t.eps * t.nu) * x;  // = 1 - Q/P
    return numerics::beta(sigma, double(k) - sigma) * numerics::beta(rho, double(k) - rho) * std::pow(di, -k) *
           std::pow(x / di, sigma - double(k)) * std::pow(P, sigma - double(k)) * std::pow(Q, rho - sigma) *
           numerics::hyp2f1(double(k) - sigma, rho, double(k), z);
}

// The closed form as printed in the statement, kept for comparison:
// (-eps)^{rho-sigma-1} delta^{rho+k-3sigma-1} nu^{k-sigma} i^{rho-2sigma} B B F(k-sigma, rho; k; 1 - eps nu).
inline cplx i_prime_printed(int k, cplx s1, cplx s2, RegularSigns t) {
    const cplx I(0.0, 1.0);
    const cplx rho = k / 2.0 - s1, sigma = k / 2.0 + s2;
    const cplx z = 1.0 - double(t.eps * t.nu);
    return std::pow(cplx(-t.eps), rho - sigma - 1.0) * std::pow(cplx(t.del), rho + double(k) - 3.0 * sigma - 1.0) *
           std::pow(cplx(t.nu), double(k) - sigma) * std::pow(I, rho - 2.0 * sigma) *
           numerics::beta(sigma, double(k) - sigma) * numerics::beta(rho, double(k) - rho) *
           numerics::hyp2f1(double(k) - sigma, rho, double(k), z);
}

namespace detail {

inline void check_regular_args(int k, cplx s1, cplx s2) {
    ArchParams(k, s1, s2);  // validates k and the strip
}

template <class Eval>
cplx combine_regular(int k, double x, Eval&& eval) {
    auto tr = regular_triples(x);
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;  // (-1)^k
    const double pref = std::pow(std::abs(1.0 - x), k / 2.0);
    return pref * (eval(tr[0]) - sign * eval(tr[1]));
}

}  // namespace detail

// I_inf(x) by quadrature of the I' integrals; zero for x < 0.
inline numerics::QuadratureResult<cplx> i_infty_regular(int k, double x, cplx s1, cplx s2,
                                                        const numerics::QuadratureSpec& spec = {1e-10, 1e-16}) {
    detail::check_regular_args(k, s1, s2);
    numerics::QuadratureResult<cplx> out;
    if (x < 0.0) {
        out.converged = true;
        return out;
    }
    if (x == 0.0 || x == 1.0) throw domain_error("i_infty_regular: x must differ from 0 and 1");
    bool ok = true;
    double err = 0.0;
    int evals = 0;
    out.value = detail::combine_regular(k, x, [&](RegularSigns t) {
        auto r = i_prime_quadrature(k, x, s1, s2, t, spec);
        ok = ok && r.converged;
        err += r.error;
        evals += r.evaluations;
        return r.value;
    });
    out.error = err * std::pow(std::abs(1.0 - x), k / 2.0);
    out.evaluations = evals;
    out.converged = ok;
    return out;
}

inline cplx i_infty_regular_closed(int k, double x, cplx s1, cplx s2) {
    detail::check_regular_args(k, s1, s2);
    if (x < 0.0) return 0.0;
    if (x == 0.0 || x == 1.0) throw domain_error("i_infty_regular_closed: x must differ from 0 and 1");
    return detail::combine_regular(k, x, [&](RegularSigns t) { return i_prime_closed(k, x, s1, s2, t); });
}

struct DecayRow {
    long n;
    double x;
    double magnitude;
    double scaled;  // |I| n^{k/2}
};

// |I_inf((n - M)/n)| n^{k/2} along n.
inline std::vector<DecayRow> regular_decay_profile(int k, long M, const std::vector<long>& ns, cplx s1 = 0.0,
                                                   cplx s2 = 0.0) {
    std::vector<DecayRow> rows;
    for (long n : ns) {
        const double x = double(n - M) / double(n);
        const double mag = std::abs(i_infty_regular_closed(k, x, s1, s2));
        rows.push_back({n, x, mag, mag * std::pow(double(n), k / 2.0)});
    }
    return rows;
}

}  // namespace rtlab::arch
