#pragma once

#include <cstdint>
#include <cstdlib>
#include <numeric>

#include "rtlab/arith/primes.hpp"
#include "rtlab/errors.hpp"

namespace rtlab::arith {

inline bool is_fundamental_discriminant(std::int64_t D) {
    if (D == 0 || D == 1) return false;
    const std::int64_t m = ((D % 4) + 4) % 4;
    auto squarefree = [](std::int64_t n) {
        for (auto& [p, e] : factorize(n))
            if (e > 1) return false;
        return true;
    };
    if (m == 1) return squarefree(D);
    if (m != 0) return false;
    const std::int64_t d = D / 4;
    const std::int64_t r = ((d % 4) + 4) % 4;
    return (r == 2 || r == 3) && squarefree(d);
}

// Jacobi symbol (a/n) for odd n > 0.
inline int jacobi(std::int64_t a, std::int64_t n) {
    a %= n;
    if (a < 0) a += n;
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            const std::int64_t r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

// Kronecker symbol (D/n) for a discriminant D (D = 0, 1 mod 4), any integer n.
inline int kronecker(std::int64_t D, std::int64_t n) {
    if (n == 0) return (D == 1 || D == -1) ? 1 : 0;
    int sign = 1;
    if (n < 0) {
        n = -n;
        if (D < 0) sign = -1;
    }
    int v2 = 0;
    while (n % 2 == 0) n /= 2, ++v2;
    int r = sign;
    if (v2 > 0) {
        if (D % 2 == 0) return 0;
        const std::int64_t m = ((D % 8) + 8) % 8;
        if ((m == 3 || m == 5) && (v2 % 2)) r = -r;
    }
    if (n == 1) return r;
    return r * jacobi(D, n);
}

class QuadraticCharacter {
public:
    explicit QuadraticCharacter(std::int64_t D) : D_(D) {
        if (D >= 0 || !is_fundamental_discriminant(D))
            throw domain_error("QuadraticCharacter: D must be a negative fundamental discriminant");
    }
    std::int64_t discriminant() const { return D_; }
    std::int64_t conductor() const { return -D_; }
    int operator()(std::int64_t n) const { return kronecker(D_, n); }

private:
    std::int64_t D_;
};

}  // namespace rtlab::arith
