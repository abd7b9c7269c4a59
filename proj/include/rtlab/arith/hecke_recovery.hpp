#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "rtlab/arith/trace_formula.hpp"
#include "rtlab/errors.hpp"

namespace rtlab::arith {

// Element sum_m coeff_m T_m of the Hecke algebra away from N.
using HeckeElement = std::map<std::int64_t, double>;

inline HeckeElement hecke_multiply(const HeckeElement& x, const HeckeElement& y, std::int64_t N, int k) {
    HeckeElement out;
    for (auto& [a, ca] : x)
        for (auto& [b, cb] : y) {
            const std::int64_t g = std::gcd(a, b);
            for (std::int64_t e = 1; e <= g; ++e) {
                if (g % e || std::gcd(e, N) != 1) continue;
                out[a / e * (b / e)] += ca * cb * std::pow(double(e), k - 1);
            }
        }
    return out;
}

inline double hecke_trace(const HeckeElement& x, TraceTable& tr) {
    long double s = 0;
    for (auto& [m, c] : x) s += (long double)c * tr(m);
    return double(s);
}

struct RecoveryResult {
    std::int64_t dim = 0;
    std::vector<std::int64_t> basis;               // indices m_i with Tr(T_{m_i} T_{m_j}) nonsingular
    std::vector<std::map<std::int64_t, double>> forms;  // c_p per eigenform, ordered by the first prime
    double min_gap = 0;                            // spacing of the generic operator's eigenvalues
};

// Eigenvalue systems from traces: Tr(X T_a T_b) = sum_f x(f) c_a(f) c_b(f), so the pencil
// (Tr(A T_a T_b), Tr(T_a T_b)) diagonalizes every T_p in the same G-orthonormal basis.
inline RecoveryResult recover_eigensystems(TraceTable& tr, const std::vector<int>& primes) {
    const std::int64_t N = tr.level();
    const int k = tr.weight();
    RecoveryResult res;
    res.dim = tr.dimension();
    if (res.dim == 0) return res;
    for (int p : primes)
        if (std::gcd<std::int64_t>(p, N) != 1) throw unsupported_input_error("recover_eigensystems: p divides N");

    auto T = [](std::int64_t m) { return HeckeElement{{m, 1.0}}; };
    auto gram = [&](const std::vector<std::int64_t>& b, const HeckeElement& X) {
        const auto d = Eigen::Index(b.size());
        Eigen::MatrixXd G(d, d);
        for (Eigen::Index i = 0; i < d; ++i)
            for (Eigen::Index j = i; j < d; ++j) {
                const auto prod = hecke_multiply(hecke_multiply(X, T(b[i]), N, k), T(b[j]), N, k);
                G(i, j) = G(j, i) = hecke_trace(prod, tr);
            }
        return G;
    };

    for (std::int64_t m = 1; std::int64_t(res.basis.size()) < res.dim; ++m) {
        if (m > 400) throw convergence_error("recover_eigensystems: no nonsingular trace form found");
        if (std::gcd(m, N) != 1) continue;
        auto trial = res.basis;
        trial.push_back(m);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram(trial, T(1)));
        const auto ev = es.eigenvalues();
        if (ev.minCoeff() > 1e-9 * ev.maxCoeff()) res.basis = trial;
    }

    HeckeElement A;
    for (std::size_t i = 0; i < primes.size(); ++i) A[primes[i]] = std::sqrt(double(i) + 2.0) / std::pow(double(primes[i]), (k - 1) / 2.0);
    const Eigen::MatrixXd G = gram(res.basis, T(1));
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(gram(res.basis, A), G);
    const auto lam = ges.eigenvalues();
    res.min_gap = INFINITY;
    for (Eigen::Index i = 1; i < lam.size(); ++i) res.min_gap = std::min(res.min_gap, lam(i) - lam(i - 1));
    if (lam.size() > 1 && res.min_gap < 1e-8) throw convergence_error("recover_eigensystems: degenerate generic operator");

    const Eigen::MatrixXd W = ges.eigenvectors();  // columns G-orthonormal
    res.forms.assign(std::size_t(res.dim), {});
    for (int p : primes) {
        const Eigen::MatrixXd H = gram(res.basis, T(p));
        for (Eigen::Index f = 0; f < W.cols(); ++f) res.forms[f][p] = W.col(f).dot(H * W.col(f));
    }
    if (!primes.empty())
        std::sort(res.forms.begin(), res.forms.end(),
                  [&](const auto& a, const auto& b) { return a.at(primes[0]) < b.at(primes[0]); });
    return res;
}

// Roots of X^2 - e1 X + e2 from power sums: e1 = Tr T_p, p2 = Tr T_{p^2} + dim p^{k-1}, e2 = (e1^2 - p2)/2.
inline std::vector<double> newton_eigenvalues(TraceTable& tr, std::int64_t p) {
    const std::int64_t d = tr.dimension();
    if (d > 2) throw unsupported_input_error("newton_eigenvalues: dimension above 2");
    if (d == 0) return {};
    const double e1 = double(tr(p));
    if (d == 1) return {e1};
    const double p2 = double(tr(p * p)) + 2.0 * std::pow(double(p), tr.weight() - 1);
    const double e2 = (e1 * e1 - p2) / 2.0;
    const double disc = e1 * e1 - 4.0 * e2;
    if (disc < 0) throw invariant_violation("newton_eigenvalues: complex roots");
    const double r = std::sqrt(disc);
    return {(e1 - r) / 2.0, (e1 + r) / 2.0};
}

}  // namespace rtlab::arith
