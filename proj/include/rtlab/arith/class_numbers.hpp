#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

#include "rtlab/errors.hpp"

namespace rtlab::arith {

// 12 h_w(D): 12 times the number of primitive reduced forms of discriminant D < 0,
// with x^2 + y^2 weighted 1/2 and x^2 + xy + y^2 weighted 1/3.
inline std::int64_t class_number_12(std::int64_t D) {
    if (D >= 0 || ((D % 4) + 4) % 4 > 1) throw domain_error("class_number_12: D must be a negative discriminant");
    if (D == -3) return 4;
    if (D == -4) return 6;
    const std::int64_t n = -D;
    std::int64_t h = 0;
    for (std::int64_t a = 1; 3 * a * a <= n; ++a)
        for (std::int64_t b = -a + 1; b <= a; ++b) {
            if ((b * b + n) % (4 * a)) continue;
            const std::int64_t c = (b * b + n) / (4 * a);
            if (c < a) continue;
            if (c == a && b < 0) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            ++h;
        }
    return 12 * h;
}

// 12 H(n): Hurwitz class number, H(0) = -1/12 and H(n) = 0 unless n = 0, 3 mod 4.
inline std::int64_t hurwitz_12(std::int64_t n) {
    if (n < 0) throw domain_error("hurwitz_12: n must be nonnegative");
    if (n == 0) return -1;
    if (n % 4 == 1 || n % 4 == 2) return 0;
    std::int64_t s = 0;
    for (std::int64_t f = 1; f * f <= n; ++f) {
        if (n % (f * f)) continue;
        const std::int64_t m = n / (f * f);
        if (m % 4 == 0 || m % 4 == 3) s += class_number_12(-m);
    }
    return s;
}

// 12 H(n) for n <= n_max.
inline std::vector<std::int64_t> hurwitz_table_12(std::int64_t n_max) {
    std::vector<std::int64_t> t(n_max + 1);
    for (std::int64_t n = 0; n <= n_max; ++n) t[n] = hurwitz_12(n);
    return t;
}

}  // namespace rtlab::arith
