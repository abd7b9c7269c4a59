#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <cstdint>
#include <map>
#include <ostream>
#include <utility>

#include "rtlab/numerics/summation.hpp"

namespace rtlab::padic {

using cplx = std::complex<double>;

// Finite sum  sum mult(m, n) (delta q^{s1})^m q^{-n s2}  with integer multiplicities.
class LaurentValue {
public:
    using Key = std::pair<int, int>;
    using Map = std::map<Key, std::int64_t>;

    LaurentValue() = default;

    void add(int m, int n, std::int64_t mult = 1) {
        if (mult == 0) return;
        auto& c = terms_[{m, n}];
        c += mult;
        if (c == 0) terms_.erase({m, n});
    }

    std::int64_t coefficient(int m, int n) const {
        auto it = terms_.find({m, n});
        return it == terms_.end() ? 0 : it->second;
    }

    const Map& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    LaurentValue& operator+=(const LaurentValue& o) {
        for (auto& [k, c] : o.terms_) add(k.first, k.second, c);
        return *this;
    }
    friend LaurentValue operator+(LaurentValue a, const LaurentValue& b) { return a += b; }

    LaurentValue scaled(std::int64_t c) const {
        LaurentValue r;
        for (auto& [k, v] : terms_) r.add(k.first, k.second, v * c);
        return r;
    }

    friend bool operator==(const LaurentValue& a, const LaurentValue& b) { return a.terms_ == b.terms_; }

    // Terms with |m| <= bm and |n| <= bn.
    LaurentValue restricted(int bm, int bn) const {
        LaurentValue r;
        for (auto& [k, v] : terms_)
            if (std::abs(k.first) <= bm && std::abs(k.second) <= bn) r.add(k.first, k.second, v);
        return r;
    }

    // Set s2 = 0: fold every n onto n = 0.
    LaurentValue collapsed_s2() const {
        LaurentValue r;
        for (auto& [k, v] : terms_) r.add(k.first, 0, v);
        return r;
    }

    // (s1, s2) -> (-s2, -s1): (delta q^{s1})^m q^{-n s2} becomes delta^{m-n} (delta q^{s1})^n q^{-m s2}.
    LaurentValue reflected(int delta) const {
        LaurentValue r;
        for (auto& [k, v] : terms_) {
            const int sign = (delta == -1 && ((k.first - k.second) % 2 != 0)) ? -1 : 1;
            r.add(k.second, k.first, sign * v);
        }
        return r;
    }

    cplx evaluate(int q, int delta, cplx s1, cplx s2) const {
        const double lq = std::log(double(q));
        numerics::ComplexCompensatedSum sum;
        for (auto& [k, v] : terms_) {
            const double sign = (delta == -1 && (k.first % 2 != 0)) ? -1.0 : 1.0;
            sum += double(v) * sign * std::exp(lq * (double(k.first) * s1 - double(k.second) * s2));
        }
        return sum.value();
    }

    // Every nonzero term has m = n + r (mod 2).
    bool parity_holds(int r) const {
        for (auto& [k, v] : terms_)
            if (((k.first - k.second - r) % 2 + 2) % 2 != 0) return false;
        return true;
    }

    friend std::ostream& operator<<(std::ostream& os, const LaurentValue& l) {
        os << "{";
        bool first = true;
        for (auto& [k, v] : l.terms_) {
            os << (first ? "" : ", ") << "(" << k.first << "," << k.second << "):" << v;
            first = false;
        }
        return os << "}";
    }

private:
    Map terms_;
};

}  // namespace rtlab::padic
