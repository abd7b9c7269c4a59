#pragma once

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

namespace rtlab::arith {

inline bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

// (prime, exponent) pairs in increasing prime order.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
    std::vector<std::pair<std::int64_t, int>> f;
    if (n < 0) n = -n;
    for (std::int64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        int e = 0;
        while (n % d == 0) n /= d, ++e;
        f.emplace_back(d, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline int valuation(std::int64_t n, std::int64_t p) {
    if (n == 0) return 1 << 30;
    int v = 0;
    while (n % p == 0) n /= p, ++v;
    return v;
}

inline std::vector<int> primes_up_to(int n) {
    std::vector<char> sieve(std::max(n + 1, 2), 1);
    std::vector<int> out;
    for (int i = 2; i <= n; ++i) {
        if (!sieve[i]) continue;
        out.push_back(i);
        for (long long j = 1LL * i * i; j <= n; j += i) sieve[j] = 0;
    }
    return out;
}

// Smallest-prime-factor table for 0..n.
inline std::vector<int> spf_table(int n) {
    std::vector<int> spf(n + 1, 0);
    for (int i = 2; i <= n; ++i) {
        if (spf[i]) continue;
        for (long long j = i; j <= n; j += i)
            if (!spf[j]) spf[j] = i;
    }
    return spf;
}

inline std::int64_t ipow(std::int64_t b, int e) {
    std::int64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace rtlab::arith
