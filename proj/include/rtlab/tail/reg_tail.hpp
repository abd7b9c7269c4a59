#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "rtlab/arch/regular.hpp"
#include "rtlab/arith/primes.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/numerics/summation.hpp"

namespace rtlab::tail {

struct TailQuery {
    std::int64_t N = 101;
    int k = 4;
    std::int64_t M = 4;
    double eps = 0.1;
    std::int64_t n_max = 0;

    void validate() const {
        if (!arith::is_prime(N)) throw domain_error("TailQuery: N must be prime");
        if (M <= 0 || M % N == 0) throw domain_error("TailQuery: need M > 0 and N not dividing M");
        if (k < 4 || k % 2) throw domain_error("TailQuery: k must be even and >= 4");
        if (!(eps > 0)) throw domain_error("TailQuery: eps must be positive");
        if (n_max < N + M) throw domain_error("TailQuery: n_max must be at least N + M");
    }
};

// prod_{q | n} v_q(n); 1 on squarefree n.
inline std::int64_t g_of_n(std::int64_t n) {
    if (n < 1) throw domain_error("g_of_n: n must be positive");
    std::int64_t g = 1;
    for (auto& [p, e] : arith::factorize(n)) g *= e;
    return g;
}

struct SubpolyResult {
    double max_ratio;
    std::int64_t argmax;
};

// max_{n <= n_max} g(n) / n^eps by a smallest-prime-factor sieve; ties go to the smallest n.
inline SubpolyResult subpolynomial_check(double eps, std::int64_t n_max) {
    if (!(eps > 0)) throw domain_error("subpolynomial_check: eps must be positive");
    if (n_max < 1) throw domain_error("subpolynomial_check: n_max must be >= 1");
    auto spf = arith::spf_table(int(n_max));
    SubpolyResult best{1.0, 1};
    for (std::int64_t n = 2; n <= n_max; ++n) {
        std::int64_t g = 1, m = n;
        while (m > 1) {
            const int p = spf[m];
            int e = 0;
            while (m % p == 0) m /= p, ++e;
            g *= e;
        }
        const double r = double(g) / std::pow(double(n), eps);
        if (r > best.max_ratio) best = {r, n};
    }
    return best;
}

// g(p^a) / p^{a eps} for a = 1..a_max.
inline std::vector<double> prime_power_ratios(int p, double eps, int a_max) {
    std::vector<double> out;
    for (int a = 1; a <= a_max; ++a) out.push_back(double(a) / std::pow(double(p), a * eps));
    return out;
}

struct TailResult {
    double partial;    // sum over mN + M <= n_max
    double remainder;  // integral-test bound for the rest
    double total;
    double scaled;     // total * N^u
    std::int64_t terms;
};

// sum_{m >= 1} (mN + M)^{-u}: direct part up to n_max plus int_{m_last}^inf (xN + M)^{-u} dx.
inline TailResult tail_sum(std::int64_t N, std::int64_t M, double u, std::int64_t n_max) {
    if (!(u > 1)) throw domain_error("tail_sum: u must exceed 1");
    if (N <= 0 || M < 0) throw domain_error("tail_sum: need N > 0, M >= 0");
    numerics::CompensatedSum sum;
    std::int64_t m = 1;
    for (; m * N + M <= n_max; ++m) sum += std::pow(double(m * N + M), -u);
    const std::int64_t last = m - 1;
    const double rem = std::pow(double(last * N + M), 1.0 - u) / (double(N) * (u - 1.0));
    TailResult r{sum.value(), rem, sum.value() + rem, 0.0, last};
    r.scaled = r.total * std::pow(double(N), u);
    return r;
}

struct PowerFit {
    double slope, intercept;
};

inline PowerFit loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw domain_error("loglog_fit: need two or more points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {slope, (sy - slope * sx) / n};
}

// Per-prime bound M v_q((n-M)/n)^2 over q | n(n-M), with each factor at least 1.
inline double finite_place_bound(std::int64_t n, std::int64_t M) {
    const std::int64_t a = n - M;
    double b = 1.0;
    std::vector<std::int64_t> primes;
    for (auto& [p, e] : arith::factorize(n)) primes.push_back(p);
    for (auto& [p, e] : arith::factorize(a))
        if (n % p != 0) primes.push_back(p);
    for (auto p : primes) {
        const int v = arith::valuation(a, p) - arith::valuation(n, p);
        b *= double(M) * std::max(1, v * v);
    }
    return b;
}

struct RegAssembly {
    std::int64_t N;
    double sum;        // sum over n = M + jN, j != 0, |j| <= j_max
    double remainder;  // tail estimate from the last terms and the n^{-(k/2 - eps)} envelope
    double scaled;     // (sum + remainder) * N^{k/2 - eps}
    std::int64_t terms;
};

// b(n) = |I_inf((n-M)/n)| * prod_q M v_q((n-M)/n)^2, summed over N | n - M with |n - M| <= n_max.
inline RegAssembly reg_assembly(const TailQuery& qy, std::complex<double> s1 = 0.05, std::complex<double> s2 = -0.03) {
    qy.validate();
    const std::int64_t j_max = qy.n_max / qy.N;
    const double u = qy.k / 2.0 - qy.eps;
    numerics::CompensatedSum sum, envelope;
    std::int64_t terms = 0, env_terms = 0;
    for (std::int64_t j = -j_max; j <= j_max; ++j) {
        if (j == 0) continue;
        const std::int64_t n = qy.M + j * qy.N;
        if (n == 0 || n == 1) continue;
        const double x = double(n - qy.M) / double(n);
        if (x <= 0.0 || x == 1.0) continue;
        const double arch = std::abs(arch::i_infty_regular_closed(qy.k, x, s1, s2));
        const double b = arch * finite_place_bound(n, qy.M);
        sum += b;
        ++terms;
        if (2 * std::abs(j) > j_max) {
            envelope += b * std::pow(double(std::abs(n)), u);
            ++env_terms;
        }
    }
    // both tails |j| > j_max, with b(n) |n|^u replaced by its mean over j_max/2 < |j| <= j_max
    const double c = env_terms ? envelope.value() / double(env_terms) : 0.0;
    const double rem = 2.0 * c * std::pow(double(j_max) * qy.N, 1.0 - u) / (double(qy.N) * (u - 1.0));
    const double total = sum.value() + rem;
    return {qy.N, sum.value(), rem, total * std::pow(double(qy.N), u), terms};
}

}  // namespace rtlab::tail
