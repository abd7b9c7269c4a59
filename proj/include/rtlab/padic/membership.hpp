#pragma once

#include <algorithm>
#include <array>
#include <climits>
#include <optional>
#include <string>

#include "rtlab/arith/primes.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/padic/laurent.hpp"

namespace rtlab::padic {

enum class PlaceKind { unramified, level, hecke, ramified };

struct PlaceSpec {
    int q = 2;
    PlaceKind kind = PlaceKind::unramified;
    int delta = 1;  // chi(q); 0 when ramified
    int r = 0, r2 = 0;  // hecke signature diag(q^r, q^r2)
    int m = 0;  // conductor exponent when ramified

    static PlaceSpec unramified(int q, int delta) { return make(q, PlaceKind::unramified, delta); }
    static PlaceSpec level(int q, int delta) { return make(q, PlaceKind::level, delta); }
    static PlaceSpec hecke(int q, int delta, int r, int r2) {
        PlaceSpec p = make(q, PlaceKind::hecke, delta);
        p.r = r;
        p.r2 = r2;
        p.validate();
        return p;
    }
    static PlaceSpec ramified(int q, int m) {
        PlaceSpec p;
        p.q = q;
        p.kind = PlaceKind::ramified;
        p.delta = 0;
        p.m = m;
        p.validate();
        return p;
    }

    void validate() const {
        if (!arith::is_prime(q)) throw domain_error("PlaceSpec: q must be prime");
        if (kind == PlaceKind::ramified) {
            if (m < 1 || delta != 0) throw domain_error("PlaceSpec: ramified place needs m >= 1, delta = 0");
            return;
        }
        if (delta != 1 && delta != -1) throw domain_error("PlaceSpec: delta must be +1 or -1");
        if (kind == PlaceKind::hecke && r < r2) throw domain_error("PlaceSpec: hecke signature needs r >= r'");
    }

    // 1 / vol(Z_N K_0(N) / Z_N) = N + 1 at the level place, 1 elsewhere.
    std::int64_t volume_weight() const { return kind == PlaceKind::level ? q + 1 : 1; }

private:
    static PlaceSpec make(int q, PlaceKind k, int d) {
        PlaceSpec p;
        p.q = q;
        p.kind = k;
        p.delta = d;
        p.validate();
        return p;
    }
};

enum class OrbitKind { regular, nplus, nminus, eps_nplus, eps_nminus };

inline const char* orbit_name(OrbitKind k) {
    switch (k) {
        case OrbitKind::regular: return "xi(x)";
        case OrbitKind::nplus: return "n+";
        case OrbitKind::nminus: return "n-";
        case OrbitKind::eps_nplus: return "eps n+";
        case OrbitKind::eps_nminus: return "eps n-";
    }
    return "?";
}

struct OrbitDatum {
    OrbitKind kind = OrbitKind::regular;
    int vx = 0, v1mx = 0;  // v(x), v(1 - x) for regular orbits

    static OrbitDatum regular(int vx, int v1mx) {
        OrbitDatum o{OrbitKind::regular, vx, v1mx};
        o.validate();
        return o;
    }
    static OrbitDatum singular(OrbitKind k) {
        if (k == OrbitKind::regular) throw invalid_orbit_error("OrbitDatum::singular: regular kind");
        return OrbitDatum{k, 0, 0};
    }

    // Ultrametric consistency of (v(x), v(1-x)): one of them is 0, or both are equal and negative.
    static bool admissible(int vx, int v1mx) {
        if (vx < 0 || v1mx < 0) return vx == v1mx;
        return vx == 0 || v1mx == 0;
    }

    void validate() const {
        if (kind != OrbitKind::regular) return;
        if (!admissible(vx, v1mx))
            throw invalid_orbit_error("OrbitDatum: (v(x), v(1-x)) = (" + std::to_string(vx) + ", " +
                                      std::to_string(v1mx) + ") is not attained by any x");
    }
};

inline constexpr int kInfiniteValuation = INT_MAX / 4;

// Entry valuations [a, b; c, d] and v(det) of the orbit matrix at the cell (v(a), v(b)) = (A, B).
struct CellMatrix {
    std::array<int, 4> e;
    int vdet;
};

inline CellMatrix cell_matrix(const OrbitDatum& o, int A, int B) {
    const int inf = kInfiniteValuation;
    switch (o.kind) {
        case OrbitKind::regular:  // [[ab, ax], [b, 1]], det ab(1-x)
            return {{A + B, A + o.vx, B, 0}, A + B + o.v1mx};
        case OrbitKind::nplus:  // [[b, a], [0, 1]]
            return {{B, A, inf, 0}, B};
        case OrbitKind::nminus:  // [[a, 0], [b, 1]]
            return {{A, inf, B, 0}, A};
        case OrbitKind::eps_nplus:  // [[0, a], [b, 1]], det -ab
            return {{inf, A, B, 0}, A + B};
        case OrbitKind::eps_nminus:  // [[ab, a], [b, 0]], det -ab
            return {{A + B, A, B, inf}, A + B};
    }
    return {{0, 0, 0, 0}, 0};
}

// The valuation of the scalar lambda that could put lambda g into the support, if any.
inline std::optional<int> admissible_lambda(const PlaceSpec& place, const CellMatrix& g) {
    if (place.kind == PlaceKind::ramified)
        throw unsupported_input_error("membership: ramified regular orbital integrals are not implemented");
    const int target = (place.kind == PlaceKind::hecke) ? place.r + place.r2 : 0;
    const int diff = target - g.vdet;
    if (diff % 2 != 0) return std::nullopt;
    const int L = diff / 2;
    const int lo = *std::min_element(g.e.begin(), g.e.end()) + L;
    switch (place.kind) {
        case PlaceKind::unramified:
            if (lo >= 0) return L;
            return std::nullopt;
        case PlaceKind::level:
            if (lo >= 0 && g.e[2] + L >= 1) return L;
            return std::nullopt;
        case PlaceKind::hecke:
            if (lo == place.r2) return L;
            return std::nullopt;
        case PlaceKind::ramified:
            break;
    }
    return std::nullopt;
}

// True iff some lambda puts lambda g(a, b) into the support of f_v, for v(a) = A, v(b) = B.
inline bool membership_oracle(const PlaceSpec& place, const OrbitDatum& orbit, int A, int B) {
    orbit.validate();
    return admissible_lambda(place, cell_matrix(orbit, A, B)).has_value();
}

// The (m, n) exponent of the character weight carried by the cell (A, B).
inline std::pair<int, int> cell_exponent(OrbitKind k, int A, int B) {
    switch (k) {
        case OrbitKind::regular: return {A, B};
        case OrbitKind::nplus: return {A, B - A};
        case OrbitKind::nminus: return {A - B, B};
        case OrbitKind::eps_nplus:
        case OrbitKind::eps_nminus: return {A, B};
    }
    return {A, B};
}

struct BruteForceResult {
    LaurentValue value;
    int accepted = 0;
    bool touches_boundary = false;
    int min_a = INT_MAX, max_a = INT_MIN, min_b = INT_MAX, max_b = INT_MIN;
};

// Sums cell weights over all accepted (v(a), v(b)) in [-B, B]^2. Regular orbits have finite support
// and raise window_too_small_error when it reaches the edge; singular orbits report the flag instead.
inline BruteForceResult brute_force_integral(const PlaceSpec& place, const OrbitDatum& orbit, int window) {
    orbit.validate();
    if (window < 0) throw domain_error("brute_force_integral: negative window");
    BruteForceResult out;
    const std::int64_t w = place.volume_weight();
    for (int A = -window; A <= window; ++A)
        for (int B = -window; B <= window; ++B) {
            if (!membership_oracle(place, orbit, A, B)) continue;
            auto [m, n] = cell_exponent(orbit.kind, A, B);
            out.value.add(m, n, w);
            ++out.accepted;
            out.min_a = std::min(out.min_a, A);
            out.max_a = std::max(out.max_a, A);
            out.min_b = std::min(out.min_b, B);
            out.max_b = std::max(out.max_b, B);
            if (std::abs(A) == window || std::abs(B) == window) out.touches_boundary = true;
        }
    if (out.touches_boundary && orbit.kind == OrbitKind::regular)
        throw window_too_small_error("brute_force_integral: support reaches the window edge");
    return out;
}

// Valuation inequalities (i)-(v) for the unramified regular orbit, read literally.
inline bool support_predicate(int vx, int v1mx, int A, int B) {
    if (!(v1mx <= 0)) return false;
    if (!(vx >= v1mx)) return false;
    if (v1mx < 0 && vx != v1mx) return false;
    if (!(v1mx - vx <= A && A <= std::min(-v1mx, -B - v1mx))) return false;
    if (!(std::max(v1mx, A + v1mx) <= B && B <= vx - v1mx)) return false;
    return ((A + B - v1mx) % 2 + 2) % 2 == 0;
}

// Support box from inequalities (iii)/(iv) with the coupled bounds dropped.
struct SupportBox {
    int a_lo, a_hi, b_lo, b_hi;
};

inline SupportBox support_box(int vx, int v1mx) { return {v1mx - vx, -v1mx, v1mx, vx - v1mx}; }

}  // namespace rtlab::padic
