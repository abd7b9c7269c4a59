#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <random>

#include "json.hpp"
#include "rtlab/lvalues.hpp"

using namespace rtlab;
using namespace rtlab::lvalues;

namespace {

struct Reference {
    double central, twisted, petersson;
    int root_number;
};

const std::vector<arith::Eigenform>& forms() {
    static const auto f = arith::load_eigenforms(std::string(RTLAB_DATA_DIR) + "/newforms_k4.jsonl");
    return f;
}

const std::map<std::string, Reference>& references() {
    static const auto refs = [] {
        std::map<std::string, Reference> out;
        std::ifstream in(std::string(RTLAB_DATA_DIR) + "/reference_k4.jsonl");
        std::string line;
        while (std::getline(in, line)) {
            auto j = nlohmann::json::parse(line);
            out[j["label"]] = {std::stod(j["central_value"].get<std::string>()),
                               std::stod(j["twisted_central_value"].get<std::string>()),
                               std::stod(j["petersson"].get<std::string>()), j["root_number"].get<int>()};
        }
        return out;
    }();
    return refs;
}

const arith::Eigenform& form(const std::string& label) {
    for (auto& f : forms())
        if (f.label == label) return f;
    throw std::runtime_error("no form " + label);
}

std::vector<const arith::Eigenform*> forms_up_to(std::int64_t N) {
    std::vector<const arith::Eigenform*> out;
    for (auto& f : forms())
        if (f.level <= N) out.push_back(&f);
    return out;
}

}  // namespace

TEST(QExpansion, DecaysAtInfinityAndIsLinear) {
    const auto& f = form("7.4.a.1");
    auto s = CoefficientSeries::of(f);
    const cplx z(0.13, 3.0);
    const auto v = q_expansion_eval(s, z).value;
    EXPECT_NEAR(std::abs(v - std::exp(cplx(0, 2 * M_PI) * z)), 0.0, 1e-15);
    EXPECT_LT(std::abs(q_expansion_eval(s, cplx(0.2, 8.0)).value), 1e-21);
    auto s2 = s;
    for (auto& b : s2.b) b *= 2;
    const cplx w(0.3, 0.2);
    EXPECT_NEAR(std::abs(q_expansion_eval(s2, w).value - 2.0 * q_expansion_eval(s, w).value), 0.0, 1e-13);
}

TEST(QExpansion, TailBoundCertifiesTruncation) {
    const auto& f = form("11.4.a.2");
    auto s = CoefficientSeries::of(f);
    for (double y : {0.05, 0.1, 0.3}) {
        const cplx z(0.27, y);
        auto e = q_expansion_eval(s, z, 1e-10);
        cplx full = 0, q = std::exp(cplx(0, 2 * M_PI) * z), qn = 1;
        for (std::int64_t n = 1; n <= s.size(); ++n) full += s.b[n - 1] * (qn *= q);
        EXPECT_LE(std::abs(full - e.value), e.tail_bound + 1e-12 * std::abs(full)) << y;
        EXPECT_LT(e.terms, s.size());
    }
    EXPECT_THROW(q_expansion_eval(s, cplx(0.0, 1e-3)), insufficient_coefficients_error);
    EXPECT_THROW(q_expansion_eval(s, cplx(0.0, -1.0)), domain_error);
}

TEST(HeightReducer, PreservesInvariantDensity) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> ux(-0.5, 0.5), uy(0.08, 0.5);
    for (const char* label : {"7.4.a.1", "11.4.a.1", "23.4.b.2"}) {
        const auto& f = form(label);
        auto s = CoefficientSeries::of(f);
        HeightReducer red(f.level);
        for (int i = 0; i < 20; ++i) {
            const cplx u(ux(rng), uy(rng));
            const cplx r = red.reduce(u);
            EXPECT_GE(r.imag(), u.imag());
            const double direct = std::norm(q_expansion_eval(s, u).value) * std::pow(u.imag(), 4);
            EXPECT_NEAR(invariant_density(s, red, u), direct, 1e-10 * std::max(direct, 1e-3)) << label;
        }
    }
}

TEST(HeightReducer, LiftsPointsNearCuspZero) {
    HeightReducer red(59);
    const cplx u(0.001, 0.002);
    EXPECT_GT(red.reduce(u).imag(), 0.2);
    const cplx v(0.5, 0.0147);
    EXPECT_GT(red.reduce(v).imag(), 0.25);
}

TEST(Fricke, SignMatchesStoredAtkinLehner) {
    for (auto* f : forms_up_to(60)) {
        auto r = fricke_sign(*f);
        EXPECT_EQ(r.w, *f->atkin_lehner) << f->label;
        EXPECT_LT(r.residual, 1e-9);
        EXPECT_GT(r.wrong_residual, 1e3 * 1e-9);
    }
}

TEST(Fricke, StoredSignConflictIsReported) {
    auto f = form("7.4.a.1");
    f.atkin_lehner = -1;
    EXPECT_THROW(fricke_sign(f), invariant_violation);
}

TEST(CompletedL, LambdaConsistencyFromIntegralRepresentation) {
    for (const char* label : {"5.4.a.1", "7.4.a.1", "11.4.a.1", "13.4.a.1"}) {
        const auto& f = form(label);
        CompletedL L(CoefficientSeries::of(f), fricke_sign(f).w);
        for (double s : {0.3, 0.7}) {
            const double a = L.lambda_mellin(s, 1.3), b = L.lambda_mellin(1 - s, 0.7);
            EXPECT_NEAR(a, L.epsilon() * b, 1e-9 * std::abs(a)) << label << " " << s;
            EXPECT_NEAR(L.lambda_afe(s), a, 1e-10 * std::abs(a));
        }
    }
}

TEST(CompletedL, WrongSignBreaksSplitIndependence) {
    const auto& f = form("7.4.a.1");
    CompletedL good(CoefficientSeries::of(f), 1), bad(CoefficientSeries::of(f), -1);
    EXPECT_LT(good.fe_residual(0.3), 1e-12);
    EXPECT_GT(bad.fe_residual(0.3), 1e-3);
    EXPECT_THROW(CompletedL(CoefficientSeries::of(f), 0), domain_error);
}

TEST(CentralValue, DualPathAgreementAndReference) {
    const auto& refs = references();
    for (auto* f : forms_up_to(60)) {
        auto cv = central_value(*f);
        const auto& ref = refs.at(f->label);
        EXPECT_EQ(cv.epsilon, ref.root_number) << f->label;
        ASSERT_TRUE(cv.mellin.has_value());
        if (!cv.forced_zero) {
            EXPECT_NEAR(cv.afe, *cv.mellin, 1e-8 * std::abs(cv.afe)) << f->label;
            EXPECT_NEAR(cv.value, ref.central, 1e-10 * std::abs(ref.central)) << f->label;
        } else {
            EXPECT_EQ(cv.value, 0.0);
            EXPECT_LT(std::abs(cv.afe), 1e-12);
        }
        EXPECT_LE(cv.fe_residual, 1e-7) << f->label;
    }
}

TEST(CentralValue, SpotValues) {
    EXPECT_NEAR(central_value(form("7.4.a.1")).value, 0.599566157968617566581, 1e-12);
    EXPECT_NEAR(central_value(form("5.4.a.1")).value, 0.41186132838619915, 1e-12);
    auto odd = central_value(form("13.4.a.1"));
    EXPECT_TRUE(odd.forced_zero);
    EXPECT_EQ(odd.epsilon, -1);
}

TEST(CentralValue, TwistedMatchesReference) {
    const arith::QuadraticCharacter chi(-4);
    const auto& refs = references();
    for (auto* f : forms_up_to(60)) {
        auto tv = central_value(*f, chi);
        const auto& ref = refs.at(f->label);
        EXPECT_FALSE(tv.mellin.has_value());
        EXPECT_LE(tv.fe_residual, 1e-7) << f->label;
        if (tv.forced_zero) {
            EXPECT_LT(std::abs(ref.twisted), 1e-12) << f->label;
        } else {
            EXPECT_NEAR(tv.value, ref.twisted, 1e-9 * std::max(1.0, std::abs(ref.twisted))) << f->label;
        }
    }
    EXPECT_NEAR(central_value(form("7.4.a.1"), chi).value, 2.238790517936107202695, 1e-11);
}

TEST(CentralValue, TwistRequiresCoprimeConductor) {
    EXPECT_THROW(CoefficientSeries::twisted(form("7.4.a.1"), arith::QuadraticCharacter(-7)), domain_error);
    auto s = CoefficientSeries::twisted(form("7.4.a.1"), arith::QuadraticCharacter(-4));
    EXPECT_EQ(s.conductor, 7 * 16);
    EXPECT_EQ(s.b[1], 0.0);
    EXPECT_EQ(s.b[2], 2.0);  // chi(3) c_3 = -1 * -2
}

TEST(CentralValue, ProductNonnegativityReport) {
    const arith::QuadraticCharacter chi(-4);
    int negative = 0;
    for (auto* f : forms_up_to(23)) {
        const double prod = central_value(*f).value * central_value(*f, chi).value;
        if (prod < -1e-12) ++negative;
    }
    std::cout << "forms with negative L(1/2, f x chi) L(1/2, f): " << negative << "\n";
    SUCCEED();
}

TEST(Petersson, PositiveSelfConvergentAndMatchesReference) {
    const auto& refs = references();
    for (auto* f : forms_up_to(23)) {
        auto p = petersson_norm(*f);
        EXPECT_GT(p.value, 0.0);
        EXPECT_LT(p.rel_change, 1e-5) << f->label;
        EXPECT_NEAR(p.value, refs.at(f->label).petersson, 1e-4 * p.value) << f->label;
    }
    auto p7 = petersson_norm(form("7.4.a.1"));
    EXPECT_NEAR(p7.value, 0.000861253692472969230, 1e-12 * 0.00086);
    EXPECT_THROW(petersson_norm(form("7.4.a.1"), {1, 10}), domain_error);
}

TEST(Petersson, DecompositionPieces) {
    auto p = petersson_norm(form("11.4.a.1"));
    EXPECT_GT(p.cusp_zero, p.caps);
    EXPECT_GT(p.caps, p.cusp_infinity);
    EXPECT_NEAR(p.cusp_infinity + p.cusp_zero + p.caps, p.value, 1e-18);
}

TEST(OldformSeries, VShiftedMellinRelation) {
    // g_N(z) = N g(N z): b'_{Nn} = N b_n, so sum b'_n n^{-s} = N^{1-s} sum b_n n^{-s}
    const auto& f = form("5.4.a.1");
    const std::int64_t N = 3;
    std::vector<double> shifted(f.c.size(), 0.0);
    for (std::size_t n = 1; N * n <= f.c.size(); ++n) shifted[N * n - 1] = double(N) * f.c[n - 1];
    const double s = 4.5;
    double lhs = 0, rhs = 0;
    for (std::size_t n = 1; n <= f.c.size(); ++n) {
        lhs += shifted[n - 1] * std::pow(double(n), -s);
        if (N * n <= f.c.size()) rhs += f.c[n - 1] * std::pow(double(n), -s);
    }
    EXPECT_NEAR(lhs, std::pow(double(N), 1 - s) * rhs, 1e-14);
}
