#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "rtlab/arith/characters.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/numerics/summation.hpp"
#include "rtlab/padic/laurent.hpp"
#include "rtlab/padic/membership.hpp"

namespace rtlab::padic {

// Whether the level-place sums carry the 1/V_N = N + 1 factor of f_N.
enum class VolumeConvention { inverse_volume, as_printed };

namespace detail {

inline bool parity_ok(int m, int n, int r) { return ((m - n - r) % 2 + 2) % 2 == 0; }

inline void require_closed_kind(const PlaceSpec& place) {
    if (place.kind != PlaceKind::unramified && place.kind != PlaceKind::level)
        throw unsupported_input_error("regular closed form: only unramified and level places");
}

}  // namespace detail

// The parity-constrained double sums as printed (unramified: cases v(1-x) = 0 and < 0; level: v_N(1-x) = 0).
inline LaurentValue regular_closed_form_printed(const PlaceSpec& place, const OrbitDatum& orbit,
                                                VolumeConvention vol = VolumeConvention::inverse_volume) {
    orbit.validate();
    detail::require_closed_kind(place);
    if (orbit.kind != OrbitKind::regular) throw invalid_orbit_error("regular_closed_form: regular orbit expected");
    const int vx = orbit.vx, w = orbit.v1mx;
    LaurentValue out;
    if (place.kind == PlaceKind::unramified) {
        if (w == 0) {
            for (int n = 0; n <= vx; ++n)
                for (int m = -vx; m <= -n; ++m)
                    if (detail::parity_ok(m, n, w)) out.add(m, n);
        } else if (w < 0) {
            for (int n = vx; n <= 0; ++n)
                for (int m = 0; m <= -n; ++m)
                    if (detail::parity_ok(m, n, w)) out.add(m, n);
        }
        return out;
    }
    if (w != 0) return out;
    const std::int64_t c = vol == VolumeConvention::inverse_volume ? place.volume_weight() : 1;
    for (int n = 1; n <= vx; ++n)
        for (int m = -vx; m <= -n; ++m)
            if (detail::parity_ok(m, n, w)) out.add(m, n, c);
    return out;
}

// Solving 1)-5) directly: with w = v(1-x) the admissible cells satisfy w <= v(a)+v(b) <= -w and
// w <= v(b)-v(a) <= 2v(x)-w, which collapses to one anti-diagonal:
//   w = 0: (v(a), v(b)) = (-j, j), 0 <= j <= v(x)   (1 <= j at the level place);
//   w < 0: (v(a), v(b)) = (j, j + w), 0 <= j <= -w  (empty at the level place).
inline LaurentValue regular_closed_form(const PlaceSpec& place, const OrbitDatum& orbit,
                                        VolumeConvention vol = VolumeConvention::inverse_volume) {
    orbit.validate();
    detail::require_closed_kind(place);
    if (orbit.kind != OrbitKind::regular) throw invalid_orbit_error("regular_closed_form: regular orbit expected");
    const int vx = orbit.vx, w = orbit.v1mx;
    LaurentValue out;
    if (w > 0) return out;
    if (place.kind == PlaceKind::unramified) {
        if (w == 0)
            for (int j = 0; j <= vx; ++j) out.add(-j, j);
        else
            for (int j = 0; j <= -w; ++j) out.add(j, j + w);
        return out;
    }
    if (w != 0) return out;
    const std::int64_t c = vol == VolumeConvention::inverse_volume ? place.volume_weight() : 1;
    for (int j = 1; j <= vx; ++j) out.add(-j, j, c);
    return out;
}

// L_v(-s1-s2, chi) expanded to J terms: sum_{j<=J} (delta q^{s1})^j q^{j s2}, times 1/V_N at the level place.
inline LaurentValue nplus_closed_form(const PlaceSpec& place, int J) {
    detail::require_closed_kind(place);
    LaurentValue out;
    for (int j = 0; j <= J; ++j) out.add(j, -j, place.volume_weight());
    return out;
}

// Unramified: the n^+ value at (-s2, -s1). Level: (1/V_N) chi(N) N^{-s1-s2} L(s1+s2, chi_N), J terms.
inline LaurentValue nminus_closed_form(const PlaceSpec& place, int J) {
    detail::require_closed_kind(place);
    LaurentValue out;
    if (place.kind == PlaceKind::unramified) {
        for (int j = 0; j <= J; ++j) out.add(-j, j);
        return out;
    }
    for (int j = 1; j <= J; ++j) out.add(-j, j, place.volume_weight());
    return out;
}

// T(f_n) with s2 = 0, s = s1, X = delta q^s:  T(f_0) = 1/(1-X),  T(f_n) = X^{-n}(1+X)/(1-X).
// Coefficients of X^m for m <= J.
inline LaurentValue t_transform_closed(int n, int J) {
    if (n < 0) throw domain_error("t_transform_closed: n must be >= 0");
    LaurentValue out;
    if (n == 0) {
        for (int m = 0; m <= J; ++m) out.add(m, 0);
        return out;
    }
    out.add(-n, 0);
    for (int m = -n + 1; m <= J; ++m) out.add(m, 0, 2);
    return out;
}

// S(f_n) = I + II + III on the n^- orbit, geometric tails truncated at J terms.
//   I   = delta^{-n} q^{n s1} L(s1+s2)             -> (n - j, j)
//   II  = sum_{a=1}^{n-1} delta^{a-n} q^{n s1} q^{a(s2-s1)} -> (n - a, -a)
//   III = q^{n s2} L(s1+s2)                        -> (-j, j - n)
inline LaurentValue s_transform_closed(int n, int J) {
    if (n < 0) throw domain_error("s_transform_closed: n must be >= 0");
    LaurentValue out;
    if (n == 0) {
        for (int j = 0; j <= J; ++j) out.add(-j, j);
        return out;
    }
    for (int j = 0; j <= J; ++j) out.add(n - j, j);
    for (int a = 1; a <= n - 1; ++a) out.add(n - a, -a);
    for (int j = 0; j <= J; ++j) out.add(-j, j - n);
    return out;
}

// Local L-factor L_q(s, chi) = (1 - delta q^{-s})^{-1}.
inline cplx local_L(int q, int delta, cplx s) {
    const cplx den = 1.0 - double(delta) * std::exp(-s * std::log(double(q)));
    if (std::abs(den) == 0.0) throw pole_error("local_L: pole");
    return 1.0 / den;
}

inline cplx t_transform_value(int q, int delta, int n, cplx s) {
    if (n < 0) throw domain_error("t_transform_value: n must be >= 0");
    if (delta == 1 && s == cplx(0.0)) throw pole_error("t_transform_value: pole of L_q(-s, chi) at s = 0");
    const cplx X = double(delta) * std::exp(s * std::log(double(q)));
    if (n == 0) return 1.0 / (1.0 - X);
    return std::pow(X, -n) * (1.0 + X) / (1.0 - X);
}

inline cplx s_transform_value(int q, int delta, int n, cplx s1, cplx s2) {
    if (n < 0) throw domain_error("s_transform_value: n must be >= 0");
    if (delta == 1 && s1 + s2 == cplx(0.0)) throw pole_error("s_transform_value: pole of L_q(s1+s2, chi)");
    const double lq = std::log(double(q));
    const cplx L = local_L(q, delta, s1 + s2);
    if (n == 0) return L;
    const cplx sign_n = (delta == -1 && n % 2) ? -1.0 : 1.0;
    const cplx I = sign_n * std::exp(double(n) * s1 * lq) * L;
    numerics::ComplexCompensatedSum II;
    for (int a = 1; a <= n - 1; ++a) {
        const double sg = (delta == -1 && (a - n) % 2) ? -1.0 : 1.0;
        II += sg * std::exp((double(n) * s1 + double(a) * (s2 - s1)) * lq);
    }
    const cplx III = std::exp(double(n) * s2 * lq) * L;
    return I + II.value() + III;
}

// The II term in the printed closed form p^{n s1} delta^{-n} (delta p^{s2-s1} - delta^2 p^{n s2})/(1 - delta p^{s2}).
inline cplx s_transform_II_printed(int q, int delta, int n, cplx s1, cplx s2) {
    const double lq = std::log(double(q));
    const double d = delta;
    const cplx pre = std::exp(double(n) * s1 * lq) * std::pow(d, -n);
    return pre * (d * std::exp((s2 - s1) * lq) - d * d * std::exp(double(n) * s2 * lq)) / (1.0 - d * std::exp(s2 * lq));
}

// lim_{s -> 0} T(f_n)(s) / L_q(-s, chi), by the symmetric estimate (Q(h) + Q(-h)) / 2.
inline double t_quotient_limit(int q, int delta, int n, double h = 1e-6) {
    auto Q = [&](double s) { return t_transform_value(q, delta, n, s) / local_L(q, delta, -s); };
    return (0.5 * (Q(h) + Q(-h))).real();
}

// lim_{s1, s2 -> 0} S(f_n) / L_q(s1 + s2, chi) along s1 = s2 = t/2.
inline double s_quotient_limit(int q, int delta, int n, double h = 1e-6) {
    auto Q = [&](double t) { return s_transform_value(q, delta, n, t / 2, t / 2) / local_L(q, delta, t); };
    return (0.5 * (Q(h) + Q(-h))).real();
}

struct ReflectionReport {
    std::size_t unramified_mismatches = 0;  // coefficients where I(n^-) and reflected I(n^+) differ
    std::size_t level_mismatches = 0;       // brute n^- at N against the closed form
    double fp_basic = 0.0, fp_minus_basic = 0.0;  // quotient limits for the basic f_p
    double discrepancy() const {
        return double(unramified_mismatches + level_mismatches) + std::abs(fp_basic - 1.0) +
               std::abs(fp_minus_basic - 1.0);
    }
};

inline std::size_t count_mismatches(const LaurentValue& a, const LaurentValue& b) {
    std::size_t n = 0;
    for (auto& [k, v] : a.terms())
        if (b.coefficient(k.first, k.second) != v) ++n;
    for (auto& [k, v] : b.terms())
        if (a.coefficient(k.first, k.second) == 0) ++n;
    return n;
}

// Brute-force check of I_v(n^-; s1, s2) = I_v(n^+; -s2, -s1) in Laurent form, the level closed form,
// and F_p = F_p^- = 1 for the basic f_p. Compared inside the box |m|, |n| <= W/2.
inline ReflectionReport n_minus_reflection_check(int q, int delta, int W = 16) {
    ReflectionReport rep;
    const int box = W / 2;
    auto unr = PlaceSpec::unramified(q, delta);
    auto minus = brute_force_integral(unr, OrbitDatum::singular(OrbitKind::nminus), W).value.restricted(box, box);
    auto plus = brute_force_integral(unr, OrbitDatum::singular(OrbitKind::nplus), W).value;
    rep.unramified_mismatches = count_mismatches(minus, plus.reflected(delta).restricted(box, box));
    auto lvl = PlaceSpec::level(q, delta);
    auto lm = brute_force_integral(lvl, OrbitDatum::singular(OrbitKind::nminus), W).value.restricted(box, box);
    rep.level_mismatches = count_mismatches(lm, nminus_closed_form(lvl, W).restricted(box, box));
    rep.fp_basic = t_quotient_limit(q, delta, 0);
    rep.fp_minus_basic = s_quotient_limit(q, delta, 0);
    return rep;
}

// g(chi_D) = sum_{a mod |D|} chi_D(a) e^{2 pi i a / |D|}.
inline cplx gauss_sum(std::int64_t D) {
    arith::QuadraticCharacter chi(D);
    const std::int64_t n = chi.conductor();
    numerics::ComplexCompensatedSum sum;
    for (std::int64_t a = 1; a < n; ++a) {
        const int c = chi(a);
        if (c == 0) continue;
        const double t = 2.0 * std::numbers::pi * double(a) / double(n);
        sum += double(c) * cplx(std::cos(t), std::sin(t));
    }
    return sum.value();
}

// Largest |v(1-x)| window row count of nonzero Hecke orbital integrals: for each v(1-x) the
// accepted-cell count at v(x) in [0, vmax], divided by max(1, v(x))^2; the max is the observed C(f_p).
struct HeckeSupportRow {
    int v1mx;
    bool nonzero;
    double max_ratio;
};

inline std::vector<HeckeSupportRow> hecke_support_table(int q, int r, int r2, int vmax = 4, int window = 16) {
    auto place = PlaceSpec::hecke(q, 1, r, r2);
    std::vector<HeckeSupportRow> rows;
    for (int w = -vmax; w <= r + r2 + 1; ++w) {
        HeckeSupportRow row{w, false, 0.0};
        for (int vx = -vmax; vx <= vmax; ++vx) {
            if (!OrbitDatum::admissible(vx, w)) continue;
            auto res = brute_force_integral(place, OrbitDatum::regular(vx, w), window);
            if (res.accepted == 0) continue;
            row.nonzero = true;
            const double scale = std::max(1, std::abs(vx));
            row.max_ratio = std::max(row.max_ratio, res.accepted / (scale * scale));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace rtlab::padic
