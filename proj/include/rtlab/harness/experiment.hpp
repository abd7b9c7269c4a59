#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rtlab/arch/arch_local.hpp"
#include "rtlab/harness/geometric_audit.hpp"
#include "rtlab/harness/spectral.hpp"

namespace rtlab::harness {

struct LevelSummary {
    std::int64_t N;
    double S_J, S_full, G_J, G_full;
    double ratio_full;  // S_full / G_full
    std::optional<double> share_J;  // S_J / S_full
    bool positive;
};

struct AverageReport {
    ExperimentConfig config;
    // measure and constants
    int delta = 0;
    double total_mass = 0, mu_J = 0;
    std::vector<double> bin_masses;
    std::string h_k;
    double c_k = 0, L1 = 0, L0_direct = 0, L0_functional = 0;
    double G_J = 0, G_full = 0;
    // per level, in config order
    std::vector<LevelData> levels;
    std::vector<LevelSummary> summaries;
    std::vector<GeometricAudit> audits;
    std::optional<ProportionalityReport> proportionality;
    std::optional<EnvelopeFit> envelope;
    std::vector<std::string> normalization;
    std::vector<std::string> notes;
    std::vector<std::string> invariant_failures;
    bool partial = false;

    bool ok() const { return invariant_failures.empty(); }
};

namespace detail {

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

inline nlohmann::ordered_json cplx_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace detail

// Computes every section; levels run concurrently and are reduced in config order.
inline AverageReport compute_report(const ExperimentConfig& cfg, const std::vector<arith::Eigenform>& forms) {
    cfg.validate();
    AverageReport rep;
    rep.config = cfg;
    rep.delta = cfg.chi_p();
    const measures::SatakeMeasure m(cfg.p, rep.delta);
    rep.total_mass = measures::total_mass(m).value;
    rep.mu_J = mu_p_mass(cfg, cfg.J);
    for (auto& b : fixed_partition()) rep.bin_masses.push_back(mu_p_mass(cfg, b));
    rep.h_k = arch::h_of_k(cfg.k).str();
    rep.c_k = arch::c_of_k(cfg.k, arch::default_formal_degree(cfg.k));
    rep.L1 = arith::dirichlet_L1(cfg.D);
    rep.L0_direct = arith::dirichlet_L0_direct(cfg.D);
    rep.L0_functional = arith::dirichlet_L0_functional(cfg.D);
    rep.G_J = geometric_prediction(cfg, cfg.J);
    rep.G_full = geometric_prediction(cfg, Interval::closed(-2, 2));
    if (std::abs(rep.total_mass - 1.0) > 1e-10) rep.invariant_failures.push_back("mu_p total mass differs from 1");

    std::vector<std::future<std::pair<LevelData, GeometricAudit>>> jobs;
    for (auto N : cfg.levels)
        jobs.push_back(std::async(std::launch::async, [&cfg, &forms, N] {
            return std::make_pair(compute_level(cfg, N, forms), geometric_side_audit(cfg, N));
        }));
    for (auto& j : jobs) {
        auto [L, A] = j.get();
        rep.levels.push_back(std::move(L));
        rep.audits.push_back(std::move(A));
    }

    std::vector<LevelData> nonempty;
    std::vector<std::int64_t> Ns;
    std::vector<double> S_full;
    for (std::size_t i = 0; i < rep.levels.size(); ++i) {
        const auto& L = rep.levels[i];
        rep.partial = rep.partial || L.partial;
        for (auto& n : L.notes) rep.notes.push_back(n);
        const auto& A = rep.audits[i];
        if (!A.ok)
            rep.invariant_failures.push_back("geometric audit at N = " + std::to_string(L.N) +
                                             ": n+ / n- mismatch or level closed-form mismatch");
        if (L.empty()) {
            rep.notes.push_back("level " + std::to_string(L.N) + ": empty new space, excluded from sums");
            continue;
        }
        LevelSummary s{L.N, spectral_sum(L, cfg.J), spectral_sum(L, Interval::closed(-2, 2)), rep.G_J, rep.G_full, 0,
                       std::nullopt, false};
        s.ratio_full = s.S_full / s.G_full;
        if (s.S_full != 0) s.share_J = s.S_J / s.S_full;
        s.positive = s.S_full > 0;
        if (!s.positive) rep.notes.push_back("level " + std::to_string(L.N) + ": full-interval spectral sum not positive");
        for (auto& r : L.rows)
            if (r.ok() && std::abs(r.a_p) > 2.0 + 1e-9)
                rep.invariant_failures.push_back(r.label + ": |a_p| > 2");
        rep.summaries.push_back(s);
        nonempty.push_back(L);
        Ns.push_back(L.N);
        S_full.push_back(s.S_full);
    }
    if (nonempty.size() >= 3) {
        try {
            rep.proportionality = proportionality_test(cfg, nonempty);
        } catch (const degenerate_error& e) {
            rep.notes.push_back(e.what());
        }
    } else if (!cfg.levels.empty()) {
        rep.notes.push_back("proportionality test skipped: fewer than 3 nonempty levels");
    }
    if (!Ns.empty()) rep.envelope = envelope_fit(Ns, S_full, rep.G_full, -cfg.k / 2.0 + 0.1);

    rep.normalization = {
        "<f, f> = integral over Gamma_0(N)\\H of |f|^2 y^k dx dy / y^2 (no volume normalisation)",
        "L-functions in the analytic normalisation, centre s = 1/2",
        "c_k = c_of_k(k, d) with d = (k - 1) / 2",
        "S compared with G = 2 mu_p(J) c_k L(1, chi) directly: no 1/(4 pi) and no V_N = 1/(N + 1) factor",
        "n+ and n- carry 1/V_N = N + 1 from the level place",
    };
    if (!rep.summaries.empty()) {
        const double classical =
            2.0 * std::pow(4 * M_PI, cfg.k - 1) / std::tgamma(double(cfg.k - 1)) * rep.L1;
        for (auto& s : rep.summaries)
            rep.normalization.push_back("N = " + std::to_string(s.N) + ": S/G = " + detail::fmt(s.ratio_full) +
                                        ", S/(4 pi G) = " + detail::fmt(s.ratio_full / (4 * M_PI)) +
                                        ", S (k-2)! / (2 (4 pi)^{k-1} L(1, chi)) = " + detail::fmt(s.S_full / classical));
    }
    return rep;
}

inline nlohmann::ordered_json to_json(const AverageReport& r) {
    using J = nlohmann::ordered_json;
    const auto& c = r.config;
    J levels = J::array();
    J cfg = {{"discriminant", c.D},  {"weight", c.k},   {"prime", c.p},
             {"interval", c.J.str()}, {"levels", c.levels}, {"coefficient_depth", c.coefficient_depth},
             {"agree_tol", c.agree_tol}, {"fe_tol", c.fe_tol}, {"petersson_tol", c.petersson_tol},
             {"pair_tol", c.pair_tol}};
    J out = {{"config", cfg},
             {"measure", {{"delta", r.delta}, {"total_mass", r.total_mass}, {"mu_J", r.mu_J}, {"bin_masses", r.bin_masses}}},
             {"constants",
              {{"h_k", r.h_k}, {"c_k", r.c_k}, {"L1_chi", r.L1}, {"L0_chi_direct", r.L0_direct},
               {"L0_chi_functional", r.L0_functional}, {"G_J", r.G_J}, {"G_full", r.G_full}}}};
    for (std::size_t i = 0; i < r.levels.size(); ++i) {
        const auto& L = r.levels[i];
        const auto& A = r.audits[i];
        J rows = J::array();
        for (auto& f : L.rows)
            rows.push_back({{"label", f.label}, {"a_p", f.a_p}, {"epsilon", f.epsilon},
                            {"twisted_epsilon", f.twisted_epsilon}, {"central", f.central}, {"twisted", f.twisted},
                            {"petersson", f.petersson}, {"weight", f.weight}, {"error", f.error}});
        J audit = J::array();
        for (auto& row : A.rows)
            audit.push_back({{"orbit", row.orbit}, {"value", detail::cplx_json(row.value)}, {"status", row.status},
                             {"detail", row.detail}});
        J lv = {{"N", L.N}, {"new_dimension", L.new_dimension}, {"partial", L.partial}, {"forms", rows},
                {"trace_check", L.trace_check},
                {"audit",
                 {{"rows", audit}, {"pair_rel_diff", A.pair_rel_diff}, {"level_mismatches", A.level_mismatches},
                  {"F_inf_plus", detail::cplx_json(A.plus.infinity)}, {"F_inf_minus", detail::cplx_json(A.minus.infinity)},
                  {"F_N_plus", A.plus.level}, {"F_N_minus", A.minus.level}, {"F_p_plus", A.plus.p},
                  {"F_p_minus", A.minus.p}, {"regular_scaled", A.regular.scaled}}}};
        for (auto& s : r.summaries)
            if (s.N == L.N) {
                lv["S_J"] = s.S_J;
                lv["S_full"] = s.S_full;
                lv["S_over_G"] = s.ratio_full;
                lv["share_J"] = s.share_J ? J(*s.share_J) : J(nullptr);
            }
        levels.push_back(lv);
    }
    out["levels"] = levels;
    if (r.proportionality) {
        J rows = J::array();
        for (auto& row : r.proportionality->rows)
            rows.push_back({{"N", row.N}, {"shares", row.shares}, {"counts", row.counts}, {"l1", row.l1}});
        J bins = J::array();
        for (auto& b : r.proportionality->bins) bins.push_back(b.str());
        const double t = r.proportionality->trend_slope;
        out["proportionality"] = {{"bins", bins}, {"masses", r.bin_masses}, {"rows", rows},
                                  {"trend_slope", std::isfinite(t) ? J(t) : J(nullptr)}};
    }
    if (r.envelope) {
        const auto& e = *r.envelope;
        out["envelope"] = {{"exponent", e.exponent}, {"C", e.C},       {"G", e.G},   {"N", e.N},
                           {"deviation", e.deviation}, {"ratio", e.ratio}, {"max_ratio", e.max_ratio}, {"within_10x", e.ok}};
    }
    out["normalization"] = r.normalization;
    out["notes"] = r.notes;
    out["invariant_failures"] = r.invariant_failures;
    out["partial"] = r.partial;
    return out;
}

struct EmittedFiles {
    std::string report, levels_csv, forms_csv;
};

inline EmittedFiles write_report(const AverageReport& r) {
    namespace fs = std::filesystem;
    const fs::path dir(r.config.output_dir);
    fs::create_directories(dir);
    EmittedFiles out{(dir / (r.config.name + "_report.json")).string(), (dir / (r.config.name + "_levels.csv")).string(),
                     (dir / (r.config.name + "_forms.csv")).string()};
    std::ofstream(out.report) << to_json(r).dump(2) << "\n";
    std::ofstream lv(out.levels_csv);
    lv << "N,new_dimension,S_J,S_full,G_J,G_full,S_over_G,share_J,mu_J\n";
    for (auto& s : r.summaries) {
        std::int64_t dim = 0;
        for (auto& L : r.levels)
            if (L.N == s.N) dim = L.new_dimension;
        lv << s.N << ',' << dim << ',' << detail::fmt(s.S_J) << ',' << detail::fmt(s.S_full) << ',' << detail::fmt(s.G_J)
           << ',' << detail::fmt(s.G_full) << ',' << detail::fmt(s.ratio_full) << ','
           << (s.share_J ? detail::fmt(*s.share_J) : "") << ',' << detail::fmt(r.mu_J) << "\n";
    }
    std::ofstream fr(out.forms_csv);
    fr << "N,label,a_p,epsilon,twisted_epsilon,central,twisted,petersson,weight,error\n";
    for (auto& L : r.levels)
        for (auto& f : L.rows)
            fr << L.N << ',' << f.label << ',' << detail::fmt(f.a_p) << ',' << f.epsilon << ',' << f.twisted_epsilon << ','
               << detail::fmt(f.central) << ',' << detail::fmt(f.twisted) << ',' << detail::fmt(f.petersson) << ','
               << detail::fmt(f.weight) << ",\"" << f.error << "\"\n";
    return out;
}

// Loads the forms named by the config (if any levels are requested), computes and writes.
inline AverageReport run_experiment(const ExperimentConfig& cfg, bool write_files = true) {
    cfg.validate();
    std::vector<arith::Eigenform> forms;
    if (!cfg.levels.empty()) {
        if (cfg.forms_path.empty()) throw domain_error("run_experiment: levels requested but no forms file");
        forms = arith::load_eigenforms(cfg.forms_path);
    }
    auto rep = compute_report(cfg, forms);
    if (write_files) write_report(rep);
    return rep;
}

}  // namespace rtlab::harness
