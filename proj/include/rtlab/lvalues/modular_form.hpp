#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "rtlab/arith/characters.hpp"
#include "rtlab/arith/eigenform.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/numerics/special.hpp"
#include "rtlab/numerics/summation.hpp"

namespace rtlab::lvalues {

using cplx = std::complex<double>;

// Coefficients of f or of f (x) chi, with the level of the resulting newform.
struct CoefficientSeries {
    std::vector<double> b;  // b[n - 1]
    int weight = 4;
    std::int64_t conductor = 1;
    std::string label;

    static CoefficientSeries of(const arith::Eigenform& f) { return {f.c, f.weight, f.level, f.label}; }

    static CoefficientSeries twisted(const arith::Eigenform& f, const arith::QuadraticCharacter& chi) {
        const std::int64_t D = chi.conductor();
        if (std::gcd(D, f.level) != 1) throw domain_error("twisted: gcd(N, D) must be 1");
        CoefficientSeries s{f.c, f.weight, f.level * D * D, f.label + " x chi_" + std::to_string(chi.discriminant())};
        for (std::size_t n = 1; n <= s.b.size(); ++n) s.b[n - 1] *= chi(std::int64_t(n));
        return s;
    }

    std::int64_t size() const { return std::int64_t(b.size()); }
};

// sum_{n > M} 2 n^{k/2} e^{-2 pi n y}, valid once the summand decreases (M >= k / (4 pi y)).
inline double q_tail_bound(int k, double y, std::int64_t M) {
    const double a = k / 2.0 + 1.0, x = 2 * M_PI * y;
    return 2.0 * numerics::upper_incomplete_gamma(a, x * double(M)) / std::pow(x, a);
}

struct QEval {
    cplx value;
    double tail_bound;
    std::int64_t terms;
};

// f(z) = sum b_n e^{2 pi i n z}, truncated where the Deligne-type tail bound drops below tol * y^{-k/2}.
inline QEval q_expansion_eval(const CoefficientSeries& s, cplx z, double tol = 1e-16) {
    const double y = z.imag();
    if (!(y > 0)) throw domain_error("q_expansion_eval: Im z must be positive");
    const double target = tol * std::max(1.0, std::pow(y, -s.weight / 2.0));
    std::int64_t M = std::max<std::int64_t>(1, std::int64_t(std::ceil(s.weight / (4 * M_PI * y))));
    while (q_tail_bound(s.weight, y, M) > target) {
        M += std::max<std::int64_t>(1, M / 8);
        if (M > s.size())
            throw insufficient_coefficients_error("q_expansion_eval: " + s.label + " needs more than " +
                                                  std::to_string(s.size()) + " coefficients at Im z = " +
                                                  std::to_string(y));
    }
    M = std::min(M, s.size());
    const cplx q = std::exp(cplx(0, 2 * M_PI) * z);
    numerics::ComplexCompensatedSum sum;
    cplx qn = 1.0;
    for (std::int64_t n = 1; n <= M; ++n) {
        qn *= q;
        if (s.b[n - 1] != 0.0) sum += s.b[n - 1] * qn;
    }
    return {sum.value(), q_tail_bound(s.weight, y, M), M};
}

inline QEval q_expansion_eval(const arith::Eigenform& f, cplx z, double tol = 1e-16) {
    return q_expansion_eval(CoefficientSeries::of(f), z, tol);
}

// Moves u to a point of larger height in its orbit under Gamma_0(N) and the Fricke involution.
// Bottom rows (a, b) with N | a act through Gamma_0(N); with gcd(a, N) = 1 through W_N Gamma_0(N).
class HeightReducer {
public:
    explicit HeightReducer(std::int64_t N) : N_(N) {}

    cplx reduce(cplx u) const {
        for (int iter = 0; iter < 16; ++iter) {
            const cplx v = step(u);
            if (v.imag() <= u.imag() * (1 + 1e-12)) return u;
            u = v;
        }
        return u;
    }

private:
    static std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
        if (b == 0) {
            x = (a >= 0) ? 1 : -1;
            y = 0;
            return std::abs(a);
        }
        std::int64_t x1, y1;
        const std::int64_t g = ext_gcd(b, a % b, x1, y1);
        x = y1;
        y = x1 - (a / b) * y1;
        return g;
    }

    cplx step(cplx u) const {
        const double x = u.real(), v = u.imag();
        double best = v;
        cplx out = u;
        for (std::int64_t a = 1;; ++a) {
            // |a u + b|^2 >= a^2 v^2, so Im' <= 1 / (a^2 v) at best
            if (1.0 / (double(a) * double(a) * v) <= best) break;
            const bool in_gamma = (a % N_ == 0);
            const double m = in_gamma ? 1.0 : double(N_);
            const double fl = std::floor(-a * x);
            for (double bd : {fl, fl + 1}) {
                const auto b = std::int64_t(bd);
                if (std::gcd(a, b) != 1) continue;
                const double im = v / (m * std::norm(double(a) * u + double(b)));
                if (im <= best) continue;
                std::int64_t r, s;
                if (in_gamma) {
                    // [[p, q], [a, b]], p b - q a = 1
                    ext_gcd(b, -a, r, s);
                    out = (double(r) * u + double(s)) / (double(a) * u + double(b));
                } else {
                    // [[N r, s], [N a, N b]], N r b - s a = 1
                    if (ext_gcd(N_ * b, -a, r, s) != 1) continue;
                    out = (double(N_ * r) * u + double(s)) / (double(N_) * (double(a) * u + double(b)));
                }
                best = im;
            }
        }
        return out;
    }

    std::int64_t N_;
};

// |f(u)|^2 Im(u)^k, invariant under Gamma_0(N) and W_N; evaluated at the reduced point.
inline double invariant_density(const CoefficientSeries& s, const HeightReducer& red, cplx u) {
    const cplx r = red.reduce(u);
    const auto e = q_expansion_eval(s, r);
    return std::norm(e.value) * std::pow(r.imag(), s.weight);
}

struct FrickeReport {
    int w;
    double residual;        // relative residual for the chosen sign
    double wrong_residual;  // the same for the other sign
};

// w with f(-1/(N z)) = w N^{k/2} z^k f(z), tested at 5 seeded points with Im z ~ 1/sqrt(N).
inline FrickeReport fricke_sign(const arith::Eigenform& f, double tol = 1e-9, std::uint64_t seed = 20260415) {
    const auto s = CoefficientSeries::of(f);
    const double N = double(f.level), y0 = 1.0 / std::sqrt(N);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.8, 1.25);
    double rp = 0, rm = 0;
    for (int i = 0; i < 5; ++i) {
        const cplx z(ux(rng) * y0, uy(rng) * y0);
        const cplx lhs = q_expansion_eval(s, -1.0 / (N * z)).value;
        const cplx rhs = std::pow(N, f.weight / 2.0) * std::pow(z, f.weight) * q_expansion_eval(s, z).value;
        const double scale = std::abs(lhs) + std::abs(rhs);
        rp = std::max(rp, std::abs(lhs - rhs) / scale);
        rm = std::max(rm, std::abs(lhs + rhs) / scale);
    }
    const int w = rp <= rm ? 1 : -1;
    const double good = std::min(rp, rm), bad = std::max(rp, rm);
    if (good > tol) throw accuracy_error("fricke_sign: " + f.label + " fits neither sign");
    if (bad < 1e3 * tol) throw ambiguous_sign_error("fricke_sign: " + f.label + " fits both signs");
    if (f.atkin_lehner && *f.atkin_lehner != w)
        throw invariant_violation("fricke_sign: " + f.label + " disagrees with the stored Atkin-Lehner sign");
    return {w, good, bad};
}

}  // namespace rtlab::lvalues
