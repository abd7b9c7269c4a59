#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "rtlab/arch/arch_local.hpp"
#include "rtlab/arith/dirichlet.hpp"
#include "rtlab/harness/config.hpp"
#include "rtlab/padic/local_integrals.hpp"
#include "rtlab/padic/membership.hpp"
#include "rtlab/tail/reg_tail.hpp"

namespace rtlab::harness {

using cplx = std::complex<double>;

struct AuditRow {
    std::string orbit;
    cplx value;
    std::string status;  // "axiom", "verified-by-oracle", "evaluated", "bound"
    std::string detail;
};

struct LocalFactors {
    cplx infinity;     // F_inf at s = 0
    double level = 0;  // F_N
    double p = 0;      // F_p for the basic f_p
};

struct GeometricAudit {
    std::int64_t N = 0;
    std::vector<AuditRow> rows;
    LocalFactors plus, minus;
    cplx gauss;
    double L0 = 0;
    cplx nplus, nminus;
    double pair_rel_diff = 0;
    std::size_t level_mismatches = 0;  // brute-force vs closed-form Laurent coefficients at N
    tail::RegAssembly regular{};
    bool ok = false;
};

namespace detail {

inline constexpr int kAuditWindow = 12;

// F_N^+ and F_N^-: the brute-force level integrals are compared with the closed forms
// (1/V_N) L_N(-s1-s2) and (1/V_N) chi(N) N^{-s1-s2} L_N(s1+s2), then divided by L_N(-s1-s2) at s = 0.
inline std::pair<double, double> level_factors(std::int64_t N, int chiN, std::size_t& mismatches) {
    const int W = kAuditWindow, box = W / 2;
    const auto place = padic::PlaceSpec::level(int(N), chiN);
    using padic::OrbitDatum;
    using padic::OrbitKind;
    auto bp = padic::brute_force_integral(place, OrbitDatum::singular(OrbitKind::nplus), W).value.restricted(box, box);
    auto bm = padic::brute_force_integral(place, OrbitDatum::singular(OrbitKind::nminus), W).value.restricted(box, box);
    const auto cp = padic::nplus_closed_form(place, W).restricted(box, box);
    const auto cm = padic::nminus_closed_form(place, W).restricted(box, box);
    mismatches += padic::count_mismatches(bp, cp) + padic::count_mismatches(bm, cm);
    // plus: w sum_{j>=0} X^j / L = w;  minus: w sum_{j>=1} X^{-j} q^{-j s2} / L = w chi(N)
    const double w = double(bp.coefficient(0, 0));
    const double wm = double(bm.coefficient(-1, 1));
    return {w, double(chiN) * wm};
}

}  // namespace detail

// The six singular orbits plus the regular-term bound at level N.
inline GeometricAudit geometric_side_audit(const ExperimentConfig& cfg, std::int64_t N) {
    const arith::QuadraticCharacter chi(cfg.D);
    GeometricAudit a;
    a.N = N;
    const int chiN = chi(N), chip = chi(cfg.p);
    if (chiN == 0 || chip == 0) throw domain_error("geometric_side_audit: chi must be unramified at N and p");

    a.rows.push_back({"e", 0.0, "axiom", "chi non-trivial"});
    a.rows.push_back({"eps", 0.0, "axiom", "chi non-trivial"});

    const auto place = padic::PlaceSpec::level(int(N), chiN);
    for (auto kind : {padic::OrbitKind::eps_nplus, padic::OrbitKind::eps_nminus}) {
        const auto r = padic::brute_force_integral(place, padic::OrbitDatum::singular(kind), detail::kAuditWindow);
        if (r.accepted != 0)
            throw invariant_violation(std::string("geometric_side_audit: ") + padic::orbit_name(kind) +
                                      " has accepted cells at N = " + std::to_string(N));
        a.rows.push_back({padic::orbit_name(kind), 0.0, "verified-by-oracle",
                          "0 accepted cells in the window |v(a)|, |v(b)| <= " + std::to_string(detail::kAuditWindow)});
    }

    const arch::ArchParams ap(cfg.k);
    a.plus.infinity = arch::i_infty_nplus(ap);
    const auto qm = arch::i_infty_nminus(ap);
    if (!qm.converged) throw accuracy_error("geometric_side_audit: n- archimedean quadrature did not converge");
    a.minus.infinity = qm.value;
    std::tie(a.plus.level, a.minus.level) = detail::level_factors(N, chiN, a.level_mismatches);
    a.plus.p = padic::t_quotient_limit(cfg.p, chip, 0);
    a.minus.p = padic::s_quotient_limit(cfg.p, chip, 0);
    a.gauss = padic::gauss_sum(cfg.D);
    a.L0 = arith::dirichlet_L0_direct(cfg.D);

    auto assemble = [&](const LocalFactors& f) { return f.infinity * f.level * f.p * a.L0 / a.gauss; };
    a.nplus = assemble(a.plus);
    a.nminus = assemble(a.minus);
    a.pair_rel_diff = std::abs(a.nplus - a.nminus) / std::abs(a.nplus);
    a.rows.push_back({"n+", a.nplus, "evaluated", "F_inf F_N F_p L(0, chi) / g(chi)"});
    a.rows.push_back({"n-", a.nminus, "evaluated", "F_inf^- F_N^- F_p^- L(0, chi) / g(chi)"});

    tail::TailQuery q;
    q.N = N;
    q.k = cfg.k;
    q.M = cfg.p;
    q.eps = 0.1;
    q.n_max = 4000 * N;
    a.regular = tail::reg_assembly(q);
    a.rows.push_back({"regular", a.regular.sum + a.regular.remainder, "bound",
                      "sum of b(n) over N | n - M, M = p, plus tail"});

    a.ok = a.level_mismatches == 0 && a.pair_rel_diff <= cfg.pair_tol;
    return a;
}

}  // namespace rtlab::harness
