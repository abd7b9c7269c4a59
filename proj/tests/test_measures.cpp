#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rtlab/measures.hpp"

using namespace rtlab;
using namespace rtlab::measures;

namespace {
const double pi = std::numbers::pi;
}

TEST(Density, EndpointIsZero) { EXPECT_EQ(density(SatakeMeasure(2, 1), 2.0), 0.0); }

TEST(Density, MinusAtZero) { EXPECT_NEAR(density(SatakeMeasure(2, -1), 0.0), 2.0 / (3.0 * pi), 1e-15); }

TEST(Density, OutsideIntervalThrows) { EXPECT_THROW(density(SatakeMeasure(3, 1), 2.01), domain_error); }

TEST(Density, RejectsBadParameters) {
    EXPECT_THROW(SatakeMeasure(4, 1), domain_error);
    EXPECT_THROW(SatakeMeasure(5, 0), domain_error);
}

TEST(Density, ProbabilityMeasures) {
    for (int p : {2, 3, 5, 7, 11, 13})
        for (int d : {1, -1}) EXPECT_NEAR(total_mass(SatakeMeasure(p, d)).value, 1.0, 1e-10) << p << d;
}

TEST(Density, PlancherelTranscription) {
    for (int p : {2, 5, 13}) {
        for (int i = 0; i <= 200; ++i) {
            double x = -2.0 + 4.0 * i / 200;
            double sp = std::sqrt(p) + 1 / std::sqrt(p);
            double printed = (p + 1) / (2 * pi) * std::sqrt(std::max(0.0, 4 - x * x)) / (sp * sp - x * x);
            EXPECT_NEAR(density(SatakeMeasure(p, -1), x), printed, 1e-15);
        }
    }
}

TEST(SatakePoly, LowIndices) {
    auto p0 = satake_poly(0, 5);
    EXPECT_DOUBLE_EQ(p0(0.3), 1.0);
    auto p1 = satake_poly(1, 5);
    EXPECT_NEAR(p1(0.7), 0.7, 1e-15);
    EXPECT_NEAR(satake_poly(2, 3)(2.0), 8.0 / 3.0, 1e-14);
}

TEST(SatakePoly, CoefficientStructure) {
    auto q = satake_poly(5, 7);
    const auto& c = q.coefficients();
    EXPECT_EQ(c[5], 1.0);
    EXPECT_EQ(c[4], 0.0);
    EXPECT_DOUBLE_EQ(c[3], 6.0 / 7.0);
    EXPECT_DOUBLE_EQ(c[1], 6.0 / 7.0);
    EXPECT_EQ(c[0], 0.0);
}

TEST(CosetOracle, CountsAndTrivialCase) {
    EXPECT_EQ(satake_coset_oracle(1, 2, cplx(0, 0.3)).coset_count, 3);
    for (int n = 0; n <= 5; ++n)
        EXPECT_EQ(satake_coset_oracle(n, 3, 0.0).coset_count, arith::ipow(3, n) + (n ? arith::ipow(3, n - 1) : 0));
    auto r = satake_coset_oracle(0, 7, cplx(0, 1.234));
    EXPECT_NEAR(std::abs(r.value - 1.0), 0.0, 1e-15);
}

TEST(CosetOracle, MatchesClosedForm) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int p : {2, 3, 5}) {
        for (int n = 0; n <= 6; ++n) {
            for (int i = 0; i < 20; ++i) {
                cplx s(0.0, u(rng) * pi / std::log(p));
                cplx a = satake_coset_oracle(n, p, s).value, b = phi_n(n, p, s);
                EXPECT_LE(std::abs(a - b), 1e-12 * std::max(1.0, std::abs(b))) << p << " " << n;
            }
        }
    }
    cplx s(0.0, pi / (2 * std::log(3.0)));
    EXPECT_NEAR(std::abs(satake_coset_oracle(2, 3, s).value - phi_n(2, 3, s)), 0.0, 1e-13);
}

TEST(Moments, ZerothMomentIsOne) {
    for (int d : {1, -1}) EXPECT_NEAR(moment(SatakeMeasure(7, d), 0).value, 1.0, 1e-12);
}

TEST(Moments, PlancherelMomentsVanish) {
    for (int p : {2, 3, 5})
        for (int n = 1; n <= 10; ++n) EXPECT_NEAR(moment(SatakeMeasure(p, -1), n).value, 0.0, 1e-10) << p << n;
    EXPECT_NEAR(moment(SatakeMeasure(5, -1), 2).value, 0.0, 1e-12);
}

// int phi_n dmu_+ = 2 for n >= 1, i.e. int psi_n dmu_+ = 2 p^{-n/2}.
TEST(Moments, PlusMomentsOfPhiAreTwo) {
    for (int p : {2, 3, 5}) {
        for (int n = 1; n <= 10; ++n) {
            double m = moment(SatakeMeasure(p, 1), n).value;
            EXPECT_NEAR(m * std::pow(p, 0.5 * n), 2.0, 1e-9) << p << " " << n;
            EXPECT_NEAR(m, 2.0 * std::pow(p, -0.5 * n), 1e-10);
        }
    }
}

TEST(SpectralDensity, VanishesAtZero) { EXPECT_NEAR(std::abs(spectral_density(2, 1.0, 0.0)), 0.0, 1e-15); }

TEST(SpectralDensity, SeriesMatchesClosedFormWithinTruncation) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int p : {2, 3}) {
        for (cplx delta : {cplx(1.0), cplx(-1.0), cplx(0.8, 0.3)}) {
            SpectralDensity F(p, delta);
            for (int i = 0; i < 20; ++i) {
                cplx s(0.0, u(rng) * 2 * pi / std::log(p));
                if (std::abs(delta) != 1.0 && std::abs(F.T(s)) * 1.25 >= 1.0) continue;
                double diff = std::abs(F.closed_form(s) - F.series(s, 50));
                EXPECT_LE(diff, F.truncation_bound(s, 50) + 1e-13);
                // a long series removes the truncation error
                EXPECT_LE(std::abs(F.closed_form(s) - F.series(s, 400)), 1e-11);
            }
        }
    }
}

TEST(SpectralDensity, EvenOddSplitSumsFromBZero) {
    SpectralDensity F(3, 1.0);
    cplx s(0.0, 0.77);
    EXPECT_LE(std::abs(F.even_odd_series(s, 300) - F.series(s, 300)), 1e-12);
}

TEST(SpectralDensity, DeltaOneLimitOfQuotient) {
    for (int m = 0; m < 8; ++m) EXPECT_NEAR(delta_quotient(1.0, m).real(), m, 1e-15);
    EXPECT_NEAR(series_coefficient_C(5, 1.0, 4).real(), 2.0 - 4.0 * 3.0, 1e-14);
}

TEST(SpectralDensity, RealPartMatchesDisplay) {
    for (int p : {2, 3, 7}) {
        SpectralDensity F(p, 1.0);
        for (int i = 1; i < 40; ++i) {
            cplx s(0.0, i * 0.025 * pi / std::log(p));
            EXPECT_NEAR(std::abs(F.real_part(s) - F.mu_display(s)), 0.0, 1e-13);
            double x = 2 * std::cos(s.imag() * std::log(p));
            EXPECT_NEAR(F.mu_display(s).real(), F.mu_display_x(x), 1e-12);
        }
    }
}

TEST(SpectralDensity, ChangeOfVariablesReproducesPlus) {
    EXPECT_LE(density_change_of_variables_check(2), 1e-12);
    EXPECT_LE(density_change_of_variables_check(3), 1e-12);
}

TEST(SatoTate, SecondMomentIsOne) { EXPECT_NEAR(sato_tate_raw_moment(2).value, 1.0, 1e-12); }

TEST(SatoTate, PlusFavoursPositiveX) {
    for (int p : {2, 3, 5, 7, 11, 13, 101}) {
        auto plus = raw_moment(SatakeMeasure(p, 1), 1), minus = raw_moment(SatakeMeasure(p, -1), 1);
        EXPECT_GT(plus.value, plus.error);
        EXPECT_LT(std::abs(minus.value), 1e-12);  // mu_- is even
    }
}

TEST(SatoTate, FirstMomentTendsToZero) {
    auto rows = sato_tate_limit_check(1, 1, {2, 5, 13, 101, 1009, 10007});
    for (size_t i = 1; i < rows.size(); ++i) EXPECT_LT(rows[i].discrepancy, rows[i - 1].discrepancy);
    EXPECT_LT(rows.back().discrepancy, 0.03);
    auto rows2 = sato_tate_limit_check(-1, 2, {2, 5, 13, 101, 1009});
    for (size_t i = 1; i < rows2.size(); ++i) EXPECT_LT(rows2[i].discrepancy, rows2[i - 1].discrepancy);
    EXPECT_NEAR(rows2.front().target, -1.0, 1e-12);
}
