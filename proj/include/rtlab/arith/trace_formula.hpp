#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>

#include "rtlab/arith/class_numbers.hpp"
#include "rtlab/arith/primes.hpp"
#include "rtlab/errors.hpp"

namespace rtlab::arith {

using bigint = boost::multiprecision::cpp_int;

// P_k(t, m) = (rho^{k-1} - rhobar^{k-1}) / (rho - rhobar), rho + rhobar = t, rho rhobar = m.
inline bigint gegenbauer_P(int k, std::int64_t t, std::int64_t m) {
    bigint prev = 1, cur = t;  // P_2 = 1, P_3 = t
    if (k == 2) return prev;
    for (int j = 3; j < k; ++j) {
        bigint next = bigint(t) * cur - bigint(m) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace detail {

inline bigint ipow_big(std::int64_t b, int e) {
    bigint r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

// mu(t, f, m) for level N in {1, prime}: psi(N)/psi(N/N_f) #{c mod N : c^2 - tc + m = 0 mod N N_f}.
inline std::int64_t local_mu(std::int64_t N, std::int64_t t, std::int64_t f, std::int64_t m) {
    if (N == 1) return 1;
    const std::int64_t Nf = std::gcd(N, f);
    const std::int64_t mod = N * Nf;
    std::int64_t count = 0;
    for (std::int64_t c = 0; c < N; ++c) {
        std::int64_t v = ((c * c - t * c + m) % mod + mod) % mod;
        if (v == 0) ++count;
    }
    return (Nf == N ? N + 1 : 1) * count;
}

}  // namespace detail

// Tr T_m on S_k(Gamma_0(N)), N = 1 or prime, gcd(m, N) = 1, k >= 4 even. Exact.
inline std::int64_t eichler_selberg_trace(std::int64_t N, int k, std::int64_t m) {
    if (!(N == 1 || is_prime(N))) throw unsupported_input_error("eichler_selberg_trace: N must be 1 or prime");
    if (k < 4 || k % 2) throw domain_error("eichler_selberg_trace: k must be even and >= 4");
    if (m < 1) throw domain_error("eichler_selberg_trace: m must be positive");
    if (std::gcd(m, N) != 1) throw unsupported_input_error("eichler_selberg_trace: gcd(m, N) > 1");
    const std::int64_t psi = (N == 1) ? 1 : N + 1;
    bigint total24 = 0;

    const auto r = std::int64_t(std::llround(std::sqrt(double(m))));
    if (r * r == m) total24 += bigint(2 * (k - 1)) * psi * detail::ipow_big(r, k - 2);

    for (std::int64_t t = 0; t * t < 4 * m; ++t) {
        const std::int64_t n = 4 * m - t * t;
        bigint inner = 0;
        for (std::int64_t f = 1; f * f <= n; ++f) {
            if (n % (f * f)) continue;
            const std::int64_t d = n / (f * f);
            if (d % 4 == 1 || d % 4 == 2) continue;
            inner += bigint(class_number_12(-d)) * detail::local_mu(N, t, f, m);
        }
        // t and -t give equal P_k (k even) and equal counts (c -> -c)
        const bigint term = gegenbauer_P(k, t, m) * inner;
        total24 -= (t == 0) ? term : 2 * term;
    }

    const std::int64_t ntau = (N == 1) ? 1 : 2;
    bigint div = 0;
    for (std::int64_t d = 1; d * d <= m; ++d) {
        if (m % d) continue;
        const bigint v = detail::ipow_big(d, k - 1);
        div += (d * d == m) ? v : 2 * v;
    }
    total24 -= 12 * ntau * div;

    if (total24 % 24 != 0)
        throw invariant_violation("eichler_selberg_trace: non-integral trace for N = " + std::to_string(N) +
                                  ", m = " + std::to_string(m));
    const bigint tr = total24 / 24;
    if (tr > bigint(INT64_MAX) || tr < bigint(INT64_MIN)) throw domain_error("eichler_selberg_trace: overflow");
    return static_cast<std::int64_t>(tr);
}

// Memoized traces for one (N, k).
class TraceTable {
public:
    TraceTable(std::int64_t N, int k) : N_(N), k_(k) {}
    std::int64_t level() const { return N_; }
    int weight() const { return k_; }
    std::int64_t operator()(std::int64_t m) {
        auto it = cache_.find(m);
        if (it != cache_.end()) return it->second;
        const auto v = eichler_selberg_trace(N_, k_, m);
        cache_.emplace(m, v);
        return v;
    }
    std::int64_t dimension() { return (*this)(1); }

private:
    std::int64_t N_;
    int k_;
    std::map<std::int64_t, std::int64_t> cache_;
};

}  // namespace rtlab::arith
