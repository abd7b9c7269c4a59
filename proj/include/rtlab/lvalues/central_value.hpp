#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <utility>

#include "rtlab/lvalues/modular_form.hpp"
#include "rtlab/numerics/quadrature.hpp"

namespace rtlab::lvalues {

// Lambda(s) = (sqrt(Q)/2pi)^{s'} Gamma(s') L(s) with s' = s + (k-1)/2; Lambda(s) = eps Lambda(1 - s).
class CompletedL {
public:
    CompletedL(CoefficientSeries s, int eps) : s_(std::move(s)), eps_(eps) {
        if (eps != 1 && eps != -1) throw domain_error("CompletedL: eps must be +1 or -1");
    }

    const CoefficientSeries& series() const { return s_; }
    int epsilon() const { return eps_; }
    std::int64_t conductor() const { return s_.conductor; }

    double shift() const { return (s_.weight - 1) / 2.0; }

    double gamma_factor(double s) const {
        const double sp = s + shift();
        return std::exp(sp * std::log(std::sqrt(double(s_.conductor)) / (2 * M_PI)) + std::lgamma(sp));
    }

    // Split at y0 = t / sqrt(Q):
    // sum b_n [Q^{s'/2} (2 pi n)^{-s'} Gamma(s', 2 pi n y0) + eps Q^{(k-s')/2} (2 pi n)^{s'-k} Gamma(k - s', 2 pi n / (Q y0))].
    double lambda_afe(double s, double t = 1.0) const { return lambda_afe_mass(s, t).first; }

    // (value, sum of |terms|)
    std::pair<double, double> lambda_afe_mass(double s, double t = 1.0) const {
        const double sp = s + shift(), k = s_.weight, Q = double(s_.conductor);
        if (!(sp > 0 && k - sp > 0)) throw domain_error("lambda_afe: s outside the supported strip");
        const double y0 = t / std::sqrt(Q), y1 = 1.0 / (Q * y0);
        const double lq = std::log(Q);
        numerics::CompensatedSum sum;
        double biggest = 0.0, mass = 0.0;
        for (std::int64_t n = 1;; ++n) {
            const double x = 2 * M_PI * double(n);
            const double w1 = std::exp(0.5 * sp * lq - sp * std::log(x)) * numerics::upper_incomplete_gamma(sp, x * y0);
            const double w2 =
                std::exp(0.5 * (k - sp) * lq + (sp - k) * std::log(x)) * numerics::upper_incomplete_gamma(k - sp, x * y1);
            // Deligne: |b_n| <= d(n) n^{(k-1)/2} <= 2 n^{k/2}; the weights decay geometrically past x y > 8
            const double bound = 2 * std::pow(double(n), k / 2.0) * (w1 + w2);
            if (x * std::min(y0, y1) > 8.0 && bound < 1e-18 * biggest) break;
            if (n > s_.size()) throw insufficient_coefficients_error("lambda_afe: " + s_.label + " needs more coefficients");
            const double term = s_.b[n - 1] * (w1 + double(eps_) * w2);
            biggest = std::max(biggest, std::abs(s_.b[n - 1]) * (w1 + w2));
            mass += std::abs(s_.b[n - 1]) * (w1 + w2);
            sum += term;
        }
        return {sum.value(), mass};
    }

    // Direct quadrature of f(iy) against y^{s'-1} above y0 and, reflected, y^{k-s'-1} above 1/(Q y0).
    double lambda_mellin(double s, double t = 1.0, double rel_tol = 1e-12) const {
        const double sp = s + shift(), k = s_.weight, Q = double(s_.conductor);
        const double y0 = t / std::sqrt(Q), y1 = 1.0 / (Q * y0);
        auto f = [&](double y) { return q_expansion_eval(s_, cplx(0, y)).value.real(); };
        numerics::QuadratureSpec spec;
        spec.rel_tol = rel_tol;
        spec.abs_tol = 1e-300;
        auto a = numerics::integrate([&](double y) { return f(y) * std::pow(y, sp - 1); }, y0, INFINITY, spec);
        auto b = numerics::integrate([&](double y) { return f(y) * std::pow(y, k - sp - 1); }, y1, INFINITY, spec);
        if (!a.converged || !b.converged) throw accuracy_error("lambda_mellin: quadrature did not converge");
        return std::pow(Q, sp / 2) * a.value + double(eps_) * std::pow(Q, (k - sp) / 2) * b.value;
    }

    double L_afe(double s, double t = 1.0) const { return lambda_afe(s, t) / gamma_factor(s); }

    // |Lambda(s; t1) - eps Lambda(1 - s; t2)| relative to the larger side, split points t1 != t2.
    // When both sides have cancelled below 1e-8 of the term mass, relative to the mass instead.
    double fe_residual(double s, double t1 = 1.1, double t2 = 0.85) const {
        const auto [a, ma] = lambda_afe_mass(s, t1);
        const auto [b, mb] = lambda_afe_mass(1 - s, t2);
        double scale = std::max(std::abs(a), std::abs(b));
        if (scale < 1e-8 * std::max(ma, mb)) scale = std::max(ma, mb);
        if (scale == 0.0) return 0.0;
        return std::abs(a - double(eps_) * b) / scale;
    }

private:
    CoefficientSeries s_;
    int eps_;
};

struct SignChoice {
    int eps;
    double residual, wrong_residual;
};

// eps minimizing the FE residual at s = 0.3, 0.7; the wrong sign must be worse by 10^3.
inline SignChoice sign_by_fe_residual(const CoefficientSeries& s, double tol = 1e-7) {
    double r[2];
    for (int i = 0; i < 2; ++i) {
        CompletedL L(s, i == 0 ? 1 : -1);
        r[i] = std::max(L.fe_residual(0.3), L.fe_residual(0.7));
    }
    const int eps = r[0] <= r[1] ? 1 : -1;
    const double good = std::min(r[0], r[1]), bad = std::max(r[0], r[1]);
    if (good > tol) throw accuracy_error("sign_by_fe_residual: " + s.label + " fits neither sign");
    if (bad < 1e3 * std::max(good, 1e-13)) throw ambiguous_sign_error("sign_by_fe_residual: " + s.label + " fits both signs");
    return {eps, good, bad};
}

struct CentralValue {
    double value = 0;
    int epsilon = 1;
    bool forced_zero = false;
    double afe = 0;
    std::optional<double> mellin;  // untwisted only
    double fe_residual = 0;        // max over s = 0.3, 0.5, 0.7 (0.5 skipped when forced zero)
};

// L(1/2, f) or L(1/2, f x chi) in the analytic normalization.
inline CentralValue central_value(const arith::Eigenform& f, std::optional<arith::QuadraticCharacter> twist = std::nullopt,
                                  double agree_tol = 1e-8) {
    CentralValue out;
    CoefficientSeries s = twist ? CoefficientSeries::twisted(f, *twist) : CoefficientSeries::of(f);
    if (twist) {
        out.epsilon = sign_by_fe_residual(s).eps;
    } else {
        const int w = fricke_sign(f).w;
        out.epsilon = (f.weight % 4 == 0) ? w : -w;  // eps = i^k w
    }
    CompletedL L(std::move(s), out.epsilon);
    out.forced_zero = out.epsilon == -1;
    out.afe = L.L_afe(0.5);
    if (!twist) {
        out.mellin = L.lambda_mellin(0.5) / L.gamma_factor(0.5);
        const double scale = std::max({std::abs(out.afe), std::abs(*out.mellin), 1e-300});
        if (!out.forced_zero && std::abs(out.afe - *out.mellin) > agree_tol * scale)
            throw accuracy_error("central_value: AFE and Mellin paths disagree for " + f.label);
    }
    out.fe_residual = std::max(L.fe_residual(0.3), L.fe_residual(0.7));
    if (!out.forced_zero) out.fe_residual = std::max(out.fe_residual, L.fe_residual(0.5));
    out.value = out.forced_zero ? 0.0 : out.afe;
    return out;
}

}  // namespace rtlab::lvalues
