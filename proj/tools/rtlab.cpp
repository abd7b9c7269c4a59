#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "rtlab/arch.hpp"
#include "rtlab/harness.hpp"
#include "rtlab/lvalues.hpp"
#include "rtlab/measures.hpp"
#include "rtlab/padic.hpp"

using namespace rtlab;

namespace {

int cmd_measures(int p, int delta, int max_n, const std::string& csv) {
    std::vector<int> deltas = delta == 0 ? std::vector<int>{1, -1} : std::vector<int>{delta};
    std::printf("p = %d\n%-4s", p, "n");
    for (int d : deltas) std::printf("  psi_n dmu_%c         X_n dmu_%c        ", d > 0 ? '+' : '-', d > 0 ? '+' : '-');
    std::printf("\n");
    for (int n = 0; n <= max_n; ++n) {
        std::printf("%-4d", n);
        for (int d : deltas) {
            const measures::SatakeMeasure m(p, d);
            std::printf("  %-19.12g %-19.12g", measures::moment(m, n).value, measures::basis_moment(m, n).value);
        }
        std::printf("\n");
    }
    if (!csv.empty()) {
        std::ofstream out(csv);
        out << "x,mu_plus,mu_minus,sato_tate\n";
        const measures::SatakeMeasure mp(p, 1), mm(p, -1);
        const int grid = 400;
        char buf[128];
        for (int i = 0; i <= grid; ++i) {
            const double x = -2.0 + 4.0 * i / grid;
            std::snprintf(buf, sizeof buf, "%.6f,%.12g,%.12g,%.12g\n", x, measures::density(mp, x),
                          measures::density(mm, x), measures::sato_tate_density(x));
            out << buf;
        }
        std::printf("density table written to %s\n", csv.c_str());
    }
    return 0;
}

int cmd_verify_local(int q, int vmax, const std::string& place_name) {
    int failures = 0, cells = 0;
    for (int delta : {1, -1}) {
        padic::PlaceSpec place;
        if (place_name == "unramified")
            place = padic::PlaceSpec::unramified(q, delta);
        else if (place_name == "level")
            place = padic::PlaceSpec::level(q, delta);
        else
            throw domain_error("verify-local: --place must be unramified or level");
        for (int vx = -vmax; vx <= vmax; ++vx)
            for (int w = -vmax; w <= vmax; ++w) {
                if (!padic::OrbitDatum::admissible(vx, w)) continue;
                const auto orbit = padic::OrbitDatum::regular(vx, w);
                const auto brute = padic::brute_force_integral(place, orbit, 4 * vmax + 4);
                const auto closed = padic::regular_closed_form(place, orbit);
                const bool ok = brute.value == closed;
                ++cells;
                failures += !ok;
                if (!ok) std::printf("MISMATCH delta=%+d v(x)=%d v(1-x)=%d\n", delta, vx, w);
            }
    }
    std::printf("q = %d, place = %s: %d orbit classes, %d mismatches\n", q, place_name.c_str(), cells, failures);
    return failures ? 1 : 0;
}

int cmd_verify_arch(int k, double s1, double s2) {
    const arch::ArchParams p(k, s1, s2);
    const auto closed = arch::i_infty_nplus(p);
    const auto quad = arch::i_infty_nplus_quadrature(p);
    const auto minus = arch::i_infty_nminus(arch::ArchParams(k, -s2, -s1));
    const double rel = std::abs(closed - quad.value) / std::abs(closed);
    const double refl = std::abs(minus.value + closed) / std::abs(closed);
    std::printf("k = %d, s1 = %g, s2 = %g\n", k, s1, s2);
    std::printf("I(n+) closed     = %.15g %+.15gi\n", closed.real(), closed.imag());
    std::printf("I(n+) quadrature = %.15g %+.15gi  (rel diff %.3e)\n", quad.value.real(), quad.value.imag(), rel);
    std::printf("I(n-)(-s2, -s1)  = %.15g %+.15gi  (|I(n-) + I(n+)| / |I(n+)| = %.3e)\n", minus.value.real(),
                minus.value.imag(), refl);
    return (rel <= 1e-6 && refl <= 1e-6) ? 0 : 1;
}

int cmd_constants(int k) {
    std::printf("k = %d\nh(k) = %s\nc_k = %.15g (d = %g)\n", k, arch::h_of_k(k).str().c_str(), arch::c_of_k(k),
                arch::default_formal_degree(k));
    return 0;
}

int cmd_lvalues(const std::string& path, std::int64_t D, bool norms) {
    const auto forms = arith::load_eigenforms(path);
    const arith::QuadraticCharacter chi(D);
    std::printf("%-12s %4s %22s %4s %22s %12s %22s\n", "label", "eps", "L(1/2, f)", "eps", "L(1/2, f x chi)", "residual",
                norms ? "<f, f>" : "");
    int bad = 0;
    for (auto& f : forms) {
        try {
            std::optional<lvalues::CentralValue> tv;
            const auto cv = lvalues::central_value(f);
            if (std::gcd(chi.conductor(), f.level) == 1) tv = lvalues::central_value(f, chi);
            const double res = std::max(cv.fe_residual, tv ? tv->fe_residual : 0.0);
            std::printf("%-12s %+4d %22.15e %+4d %22.15e %12.3e", f.label.c_str(), cv.epsilon, cv.value,
                        tv ? tv->epsilon : 0, tv ? tv->value : NAN, res);
            if (norms) std::printf(" %22.15e", lvalues::petersson_norm(f).value);
            std::printf("\n");
        } catch (const invariant_violation& e) {
            std::printf("%-12s invariant violation: %s\n", f.label.c_str(), e.what());
            ++bad;
        }
    }
    return bad ? 1 : 0;
}

int cmd_average(const std::string& config) {
    const auto cfg = harness::load_config(config);
    const auto rep = harness::run_experiment(cfg);
    std::printf("D = %lld, k = %d, p = %d (delta = %+d), J = %s, mu_p(J) = %.12g\n", (long long)cfg.D, cfg.k, cfg.p,
                rep.delta, cfg.J.str().c_str(), rep.mu_J);
    std::printf("c_k = %.12g, L(1, chi) = %.12g, G(J) = %.12g, G([-2,2]) = %.12g\n", rep.c_k, rep.L1, rep.G_J, rep.G_full);
    std::printf("%5s %5s %18s %18s %12s %10s\n", "N", "dim", "S(N, J)", "S(N, [-2,2])", "S/G", "share");
    for (auto& s : rep.summaries) {
        std::int64_t dim = 0;
        for (auto& L : rep.levels)
            if (L.N == s.N) dim = L.new_dimension;
        std::printf("%5lld %5lld %18.10g %18.10g %12.8f %10.6f\n", (long long)s.N, (long long)dim, s.S_J, s.S_full,
                    s.ratio_full, s.share_J.value_or(NAN));
    }
    if (rep.proportionality)
        for (auto& r : rep.proportionality->rows) std::printf("N = %lld: L1(bin shares, mu_p masses) = %.6f\n", (long long)r.N, r.l1);
    if (rep.envelope)
        std::printf("envelope C N^%.2f: C = %.6g, max ratio = %.4g\n", rep.envelope->exponent, rep.envelope->C,
                    rep.envelope->max_ratio);
    for (auto& n : rep.notes) std::printf("note: %s\n", n.c_str());
    for (auto& f : rep.invariant_failures) std::printf("INVARIANT FAILURE: %s\n", f.c_str());
    std::printf("report written to %s/%s_report.json\n", cfg.output_dir.c_str(), cfg.name.c_str());
    return rep.ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"relative trace formula lab"};
    app.require_subcommand(1);

    int p = 2, delta = 0, max_n = 10;
    std::string csv;
    auto* m = app.add_subcommand("measures", "moment tables and density CSV for mu_+ and mu_-");
    m->add_option("--p", p, "prime")->check(CLI::PositiveNumber);
    m->add_option("--delta", delta, "+1, -1, or 0 for both")->check(CLI::IsMember({-1, 0, 1}));
    m->add_option("--max-n", max_n, "largest moment index")->check(CLI::NonNegativeNumber);
    m->add_option("--csv", csv, "write (x, mu_plus, mu_minus, sato_tate) here");

    int q = 3, vmax = 4;
    std::string place = "unramified";
    auto* vl = app.add_subcommand("verify-local", "brute-force vs closed-form local orbital integrals");
    vl->add_option("--q", q, "prime");
    vl->add_option("--vmax", vmax, "largest |v(x)|, |v(1-x)|")->check(CLI::Range(0, 8));
    vl->add_option("--place", place, "unramified or level");

    int k = 4;
    double s1 = 0, s2 = 0;
    auto* va = app.add_subcommand("verify-arch", "archimedean n+ closed form vs quadrature");
    va->add_option("--k", k, "even weight >= 4");
    va->add_option("--s1", s1);
    va->add_option("--s2", s2);

    auto* cs = app.add_subcommand("constants", "h(k) and c_k");
    cs->add_option("--k", k, "even weight >= 4");

    std::string forms;
    std::int64_t D = -4;
    bool norms = false;
    auto* lv = app.add_subcommand("lvalues", "central values of the forms in a JSONL file");
    lv->add_option("--forms", forms, "eigenform JSONL")->required();
    lv->add_option("--twist", D, "negative fundamental discriminant");
    lv->add_flag("--norms", norms, "also compute Petersson norms");

    std::string config;
    auto* av = app.add_subcommand("average", "spectral vs geometric side over levels");
    av->add_option("--config", config, "flat key = value config")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (m->parsed()) return cmd_measures(p, delta, max_n, csv);
        if (vl->parsed()) return cmd_verify_local(q, vmax, place);
        if (va->parsed()) return cmd_verify_arch(k, s1, s2);
        if (cs->parsed()) return cmd_constants(k);
        if (lv->parsed()) return cmd_lvalues(forms, D, norms);
        if (av->parsed()) return cmd_average(config);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
