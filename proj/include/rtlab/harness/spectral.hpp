#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "rtlab/arch/arch_local.hpp"
#include "rtlab/arith/dirichlet.hpp"
#include "rtlab/arith/hecke_recovery.hpp"
#include "rtlab/arith/trace_formula.hpp"
#include "rtlab/harness/config.hpp"
#include "rtlab/lvalues.hpp"
#include "rtlab/measures/satake_measure.hpp"
#include "rtlab/tail/reg_tail.hpp"

namespace rtlab::harness {

struct FormRow {
    std::string label;
    double a_p = 0;
    int epsilon = 0, twisted_epsilon = 0;
    double central = 0, twisted = 0, petersson = 0;
    double weight = 0;  // L(1/2, f x chi) L(1/2, f) / <f, f>
    double fe_residual = 0, twisted_fe_residual = 0, petersson_change = 0;
    std::string error;  // empty when the row is usable

    bool ok() const { return error.empty(); }
};

struct LevelData {
    std::int64_t N = 0;
    std::int64_t new_dimension = 0;  // from the trace formula
    std::vector<FormRow> rows;       // sorted by label
    bool partial = false;
    std::vector<std::string> notes;
    double trace_check = -1;  // max |c_p - Newton root| when dim <= 2, else -1

    bool empty() const { return rows.empty(); }
};

namespace detail {

inline arith::Eigenform truncated(const arith::Eigenform& f, std::int64_t depth) {
    if (f.n_max() < depth)
        throw insufficient_coefficients_error(f.label + ": fewer than " + std::to_string(depth) + " coefficients");
    arith::Eigenform g = f;
    g.c.resize(std::size_t(depth));
    return g;
}

}  // namespace detail

inline FormRow form_row(const ExperimentConfig& cfg, const arith::Eigenform& f) {
    FormRow r;
    r.label = f.label;
    try {
        const auto g = detail::truncated(f, cfg.coefficient_depth);
        r.a_p = g.normalized(cfg.p);
        const auto cv = lvalues::central_value(g, std::nullopt, cfg.agree_tol);
        const auto tv = lvalues::central_value(g, arith::QuadraticCharacter(cfg.D));
        const auto pn = lvalues::petersson_norm(g);
        r.epsilon = cv.epsilon;
        r.twisted_epsilon = tv.epsilon;
        r.central = cv.value;
        r.twisted = tv.value;
        r.petersson = pn.value;
        r.fe_residual = cv.fe_residual;
        r.twisted_fe_residual = tv.fe_residual;
        r.petersson_change = pn.rel_change;
        if (r.fe_residual > cfg.fe_tol || r.twisted_fe_residual > cfg.fe_tol)
            throw accuracy_error(f.label + ": functional-equation residual above tolerance");
        if (r.petersson_change > cfg.petersson_tol)
            throw accuracy_error(f.label + ": Petersson norm not self-convergent");
        r.weight = r.central * r.twisted / r.petersson;
        if (!std::isfinite(r.weight)) throw nan_error(f.label + ": non-finite weight");
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

// Per-form data at level N. The form count is checked against the trace-formula dimension of the
// new space, and for dim <= 2 the c_p values against the roots of the T_p characteristic polynomial.
inline LevelData compute_level(const ExperimentConfig& cfg, std::int64_t N, const std::vector<arith::Eigenform>& forms) {
    LevelData L;
    L.N = N;
    arith::TraceTable full(N, cfg.k), one(1, cfg.k);
    L.new_dimension = full.dimension() - 2 * one.dimension();
    std::vector<const arith::Eigenform*> here;
    for (auto& f : forms)
        if (f.level == N && f.weight == cfg.k) here.push_back(&f);
    std::sort(here.begin(), here.end(), [](auto* a, auto* b) { return a->label < b->label; });
    if (std::int64_t(here.size()) != L.new_dimension) {
        L.partial = true;
        L.notes.push_back("level " + std::to_string(N) + ": " + std::to_string(here.size()) +
                          " forms loaded, new dimension " + std::to_string(L.new_dimension));
    }
    for (auto* f : here) {
        L.rows.push_back(form_row(cfg, *f));
        if (!L.rows.back().ok()) {
            L.partial = true;
            L.notes.push_back(L.rows.back().label + ": " + L.rows.back().error);
        }
    }
    if (L.new_dimension >= 1 && L.new_dimension <= 2 && one.dimension() == 0 &&
        std::int64_t(here.size()) == L.new_dimension) {
        auto roots = arith::newton_eigenvalues(full, cfg.p);
        std::vector<double> cp;
        for (auto* f : here) cp.push_back(f->coeff(cfg.p));
        std::sort(roots.begin(), roots.end());
        std::sort(cp.begin(), cp.end());
        L.trace_check = 0;
        for (std::size_t i = 0; i < cp.size(); ++i)
            L.trace_check = std::max(L.trace_check, std::abs(cp[i] - roots[i]) / std::max(1.0, std::abs(roots[i])));
        if (L.trace_check > 1e-8) {
            L.partial = true;
            L.notes.push_back("level " + std::to_string(N) + ": c_p disagrees with the trace formula");
        }
    }
    return L;
}

// Sum of weights over usable forms with a_p in J.
inline double spectral_sum(const LevelData& L, const Interval& J) {
    numerics::CompensatedSum s;
    if (J.empty()) return 0.0;
    for (auto& r : L.rows)
        if (r.ok() && J.contains(r.a_p)) s += r.weight;
    return s.value();
}

inline double spectral_sum(const ExperimentConfig& cfg, std::int64_t N, const Interval& J,
                           const std::vector<arith::Eigenform>& forms) {
    return spectral_sum(compute_level(cfg, N, forms), J);
}

inline double mu_p_mass(const ExperimentConfig& cfg, const Interval& J) {
    if (J.empty()) return 0.0;
    const measures::SatakeMeasure m(cfg.p, cfg.chi_p());
    const auto r = measures::mass(m, J.lo, J.hi);
    if (!r.converged) throw accuracy_error("mu_p_mass: quadrature did not converge");
    return std::clamp(r.value, 0.0, 1.0);
}

// 2 mu_p(J) c_k L(1, chi), c_k with d = (k - 1) / 2.
inline double geometric_prediction(const ExperimentConfig& cfg, const Interval& J) {
    return 2.0 * mu_p_mass(cfg, J) * arch::c_of_k(cfg.k, arch::default_formal_degree(cfg.k)) *
           arith::dirichlet_L1(cfg.D);
}

struct ProportionalityRow {
    std::int64_t N;
    std::vector<double> shares, masses;
    std::vector<int> counts;
    double l1;
};

struct ProportionalityReport {
    std::vector<Interval> bins;
    std::vector<ProportionalityRow> rows;
    double trend_slope = NAN;  // log L1 against log N
};

// Bin shares S(N, bin) / S(N, [-2, 2]) against mu_p bin masses on the fixed 4-bin partition.
inline ProportionalityReport proportionality_test(const ExperimentConfig& cfg, const std::vector<LevelData>& levels) {
    if (levels.size() < 3) throw domain_error("proportionality_test: need at least 3 levels");
    ProportionalityReport rep;
    rep.bins = fixed_partition();
    std::vector<double> masses;
    for (auto& b : rep.bins) masses.push_back(mu_p_mass(cfg, b));
    std::vector<double> xs, ys;
    for (auto& L : levels) {
        const double full = spectral_sum(L, Interval::closed(-2, 2));
        if (full == 0.0) throw degenerate_error("proportionality_test: zero full-interval sum at N = " + std::to_string(L.N));
        ProportionalityRow row{L.N, {}, masses, {}, 0.0};
        for (std::size_t i = 0; i < rep.bins.size(); ++i) {
            row.shares.push_back(spectral_sum(L, rep.bins[i]) / full);
            int c = 0;
            for (auto& r : L.rows) c += r.ok() && rep.bins[i].contains(r.a_p);
            row.counts.push_back(c);
            row.l1 += std::abs(row.shares[i] - masses[i]);
        }
        if (!std::isfinite(row.l1)) throw nan_error("proportionality_test: non-finite distance");
        if (row.l1 > 0) {
            xs.push_back(double(L.N));
            ys.push_back(row.l1);
        }
        rep.rows.push_back(std::move(row));
    }
    if (xs.size() >= 2) rep.trend_slope = tail::loglog_fit(xs, ys).slope;
    return rep;
}

struct EnvelopeFit {
    double exponent = 0, C = 0, G = 0;
    std::vector<std::int64_t> N;
    std::vector<double> deviation, ratio;  // |S - G| and |S - G| / (C N^exponent)
    double max_ratio = 0;
    bool ok = false;
};

// C fitted on the smallest level; no larger level may exceed C N^exponent by more than `slack`.
inline EnvelopeFit envelope_fit(const std::vector<std::int64_t>& Ns, const std::vector<double>& S, double G,
                                double exponent, double slack = 10.0) {
    if (Ns.empty() || Ns.size() != S.size()) throw domain_error("envelope_fit: need matching, nonempty inputs");
    EnvelopeFit e;
    e.exponent = exponent;
    e.G = G;
    e.N = Ns;
    const auto i0 = std::size_t(std::min_element(Ns.begin(), Ns.end()) - Ns.begin());
    e.C = std::abs(S[i0] - G) / std::pow(double(Ns[i0]), exponent);
    for (std::size_t i = 0; i < Ns.size(); ++i) {
        const double dev = std::abs(S[i] - G), env = e.C * std::pow(double(Ns[i]), exponent);
        e.deviation.push_back(dev);
        e.ratio.push_back(env > 0 ? dev / env : (dev == 0 ? 0.0 : INFINITY));
        e.max_ratio = std::max(e.max_ratio, e.ratio.back());
    }
    e.ok = e.max_ratio <= slack;
    return e;
}

}  // namespace rtlab::harness
