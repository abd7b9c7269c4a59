#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "rtlab/tail.hpp"

using namespace rtlab;
using namespace rtlab::tail;

namespace {

std::int64_t g_trial_division(std::int64_t n) {
    std::int64_t g = 1;
    for (std::int64_t p = 2; p * p <= n; ++p) {
        int e = 0;
        while (n % p == 0) n /= p, ++e;
        if (e) g *= e;
    }
    return g;
}

// Hurwitz zeta by Euler-Maclaurin with 40 direct terms and four Bernoulli corrections.
double hurwitz_zeta(double s, double a) {
    const int n = 40;
    double sum = 0.0;
    for (int m = 0; m < n; ++m) sum += std::pow(m + a, -s);
    const double x = n + a;
    sum += std::pow(x, 1 - s) / (s - 1) + 0.5 * std::pow(x, -s);
    const double b[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30};
    double rising = s, fact = 2.0;
    for (int j = 1; j <= 4; ++j) {
        sum += b[j - 1] / fact * rising * std::pow(x, -s - 2 * j + 1);
        rising *= (s + 2 * j - 1) * (s + 2 * j);
        fact *= (2 * j + 1) * (2 * j + 2);
    }
    return sum;
}

}  // namespace

TEST(GOfN, SpotValues) {
    EXPECT_EQ(g_of_n(1), 1);
    EXPECT_EQ(g_of_n(12), 2);
    EXPECT_EQ(g_of_n(360), 6);
    EXPECT_EQ(g_of_n(1024), 10);
    EXPECT_THROW(g_of_n(0), domain_error);
}

TEST(GOfN, MultiplicativeOnCoprimePairs) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> dist(1, 100000);
    int checked = 0;
    while (checked < 500) {
        const auto m = dist(rng), n = dist(rng);
        if (std::gcd(m, n) != 1) continue;
        EXPECT_EQ(g_of_n(m * n), g_of_n(m) * g_of_n(n)) << m << " " << n;
        ++checked;
    }
}

TEST(GOfN, OneOnSquarefree) {
    for (std::int64_t n = 1; n <= 20000; ++n) {
        bool squarefree = true;
        for (std::int64_t p = 2; p * p <= n && squarefree; ++p)
            if (n % (p * p) == 0) squarefree = false;
        if (squarefree) {
            EXPECT_EQ(g_of_n(n), 1) << n;
        }
        EXPECT_EQ(g_of_n(n), g_trial_division(n)) << n;
    }
}

TEST(Subpolynomial, MaximumAtSmallN) {
    auto r = subpolynomial_check(0.5, 1000000);
    EXPECT_EQ(r.argmax, 8);
    EXPECT_NEAR(r.max_ratio, 3.0 / std::sqrt(8.0), 1e-14);
    double brute = 0;
    for (std::int64_t n = 1; n <= 20000; ++n) brute = std::max(brute, double(g_trial_division(n)) / std::sqrt(double(n)));
    EXPECT_DOUBLE_EQ(brute, r.max_ratio);
}

TEST(Subpolynomial, SmallerEpsilonPushesArgmaxOut) {
    auto a = subpolynomial_check(0.5, 100000);
    auto b = subpolynomial_check(0.25, 100000);
    EXPECT_GT(b.argmax, a.argmax);
    EXPECT_GT(b.max_ratio, a.max_ratio);
    EXPECT_THROW(subpolynomial_check(0.0, 10), domain_error);
}

TEST(Subpolynomial, PrimePowerRatiosEventuallyDecrease) {
    auto r = prime_power_ratios(2, 0.1, 60);
    // a / 2^{a/10} peaks at a = 10/ln 2 ~ 14.4
    const int peak = int(std::max_element(r.begin(), r.end()) - r.begin()) + 1;
    EXPECT_EQ(peak, 14);
    for (std::size_t a = peak; a < r.size(); ++a) EXPECT_LT(r[a], r[a - 1]);
    EXPECT_LT(r.back(), 1.0);
}

TEST(TailSum, MatchesHurwitzZeta) {
    for (std::int64_t N : {101, 211, 401, 809})
        for (double u : {2.0, 1.9, 3.0}) {
            auto t = tail_sum(N, 4, u, 20000000);
            const double want = std::pow(double(N), -u) * hurwitz_zeta(u, 1.0 + 4.0 / N);
            EXPECT_NEAR(t.total / want, 1.0, 1e-6) << N << " " << u;
            EXPECT_GT(t.remainder, 0.0);
        }
}

TEST(TailSum, ZetaEnvelope) {
    const double zeta2 = M_PI * M_PI / 6;
    auto t = tail_sum(101, 4, 2.0, 100000000);
    EXPECT_LT(t.scaled, zeta2);
    EXPECT_GT(t.scaled, 0.9 * zeta2);
}

TEST(TailSum, SweepDecayExponent) {
    const std::vector<std::int64_t> Ns{101, 211, 401, 809};
    for (double u : {2.0, 1.9}) {
        std::vector<double> x, y;
        double lo = INFINITY, hi = 0;
        for (auto N : Ns) {
            auto t = tail_sum(N, 4, u, 50000000);
            x.push_back(double(N));
            y.push_back(t.total);
            lo = std::min(lo, t.scaled);
            hi = std::max(hi, t.scaled);
        }
        EXPECT_NEAR(loglog_fit(x, y).slope, -u, 0.05) << u;
        EXPECT_LT(hi / lo, 1.1);
    }
    // doubling N divides the sum by about 2^u
    auto a = tail_sum(401, 4, 2.0, 50000000), b = tail_sum(809, 4, 2.0, 50000000);
    EXPECT_NEAR(a.total / b.total, std::pow(809.0 / 401.0, 2.0), 0.05 * std::pow(809.0 / 401.0, 2.0));
}

TEST(TailSum, RejectsBadExponent) { EXPECT_THROW(tail_sum(101, 4, 1.0, 1000), domain_error); }

TEST(TailQuery, Validation) {
    EXPECT_NO_THROW((TailQuery{101, 4, 4, 0.1, 1000}.validate()));
    EXPECT_THROW((TailQuery{100, 4, 4, 0.1, 1000}.validate()), domain_error);
    EXPECT_THROW((TailQuery{101, 4, 202, 0.1, 1000}.validate()), domain_error);
    EXPECT_THROW((TailQuery{101, 5, 4, 0.1, 1000}.validate()), domain_error);
    EXPECT_THROW((TailQuery{101, 4, 4, 0.0, 1000}.validate()), domain_error);
    EXPECT_THROW((TailQuery{101, 4, 4, 0.1, 50}.validate()), domain_error);
}

TEST(FinitePlaceBound, Factors) {
    // n = 12, M = 4: n - M = 8, primes {2, 3}; v_2(8/12) = 1, v_3 = -1
    EXPECT_DOUBLE_EQ(finite_place_bound(12, 4), 16.0);
    // n = 105, M = 4: 101 prime, primes {3, 5, 7, 101} each v = +-1
    EXPECT_DOUBLE_EQ(finite_place_bound(105, 4), 256.0);
    // n = -97, M = 4: n - M = -101
    EXPECT_DOUBLE_EQ(finite_place_bound(-97, 4), 16.0);
}

TEST(RegAssembly, RatioBoundedOverLevels) {
    std::vector<double> scaled;
    for (std::int64_t N : {101, 211, 401}) {
        auto a = reg_assembly(TailQuery{N, 4, 4, 0.1, 4000 * N});
        EXPECT_GT(a.terms, 0);
        EXPECT_TRUE(std::isfinite(a.scaled));
        EXPECT_LT(a.remainder, a.sum);
        scaled.push_back(a.scaled);
    }
    const double lo = *std::min_element(scaled.begin(), scaled.end());
    const double hi = *std::max_element(scaled.begin(), scaled.end());
    EXPECT_GT(lo, 0.0);
    EXPECT_LT(hi / lo, 3.0);
    std::cout << "empirical C (k = 4, eps = 0.1): " << hi << "\n";
}
