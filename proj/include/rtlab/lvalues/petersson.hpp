#pragma once

#include <cmath>
#include <vector>

#include "rtlab/lvalues/modular_form.hpp"
#include "rtlab/numerics/gauss_legendre.hpp"

namespace rtlab::lvalues {

struct PeterssonMesh {
    int panels = 2;  // per direction on the cap
    int order = 10;  // Gauss-Legendre points per panel
};

struct PeterssonResult {
    double value = 0;         // fine mesh
    double coarse = 0;        // half the panels
    double rel_change = 0;    // |value - coarse| / value
    double cusp_infinity = 0;
    double cusp_zero = 0;
    double caps = 0;
    std::int64_t evaluations = 0;
};

namespace detail {

// Cusp strips {Im z >= Y} of width 1 by Parseval: sum c_n^2 (4 pi n)^{1-k} Gamma(k-1, 4 pi n Y).
inline double parseval_strip(const CoefficientSeries& s, double Y) {
    numerics::CompensatedSum sum;
    const int k = s.weight;
    for (std::int64_t n = 1; n <= s.size(); ++n) {
        const double x = 4 * M_PI * double(n);
        const double g = numerics::upper_incomplete_gamma_int(k - 1, x * Y) * std::pow(x, 1 - k);
        if (g < 1e-300) break;
        sum += s.b[n - 1] * s.b[n - 1] * g;
        if (n == s.size() && 4.0 * n * n * g > 1e-18 * sum.value())
            throw insufficient_coefficients_error("petersson: Parseval strip needs more coefficients");
    }
    return sum.value();
}

// Cap {|x| <= 1/2, sqrt(1 - x^2) <= y <= 1} carrying g(z) + sum_j g((z + j)/N), measure dx dy / y^2.
inline double cap_integral(const CoefficientSeries& s, const HeightReducer& red, const PeterssonMesh& mesh,
                           std::int64_t& evals) {
    const auto gl = numerics::gauss_legendre(mesh.order);
    const std::int64_t N = s.conductor;
    const double hx = 1.0 / mesh.panels, ht = 1.0 / mesh.panels;
    numerics::CompensatedSum sum;
    for (int px = 0; px < mesh.panels; ++px)
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double x = -0.5 + hx * (px + 0.5 * (gl.nodes[i] + 1));
            const double wx = 0.5 * hx * gl.weights[i];
            const double lo = std::sqrt(1 - x * x), height = 1.0 - lo;
            for (int pt = 0; pt < mesh.panels; ++pt)
                for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
                    const double t = ht * (pt + 0.5 * (gl.nodes[j] + 1));
                    const double wt = 0.5 * ht * gl.weights[j];
                    const double y = lo + t * height;
                    const cplx z(x, y);
                    double g = invariant_density(s, red, z);
                    for (std::int64_t c = 0; c < N; ++c) g += invariant_density(s, red, (z + double(c)) / double(N));
                    evals += N + 1;
                    sum += wx * wt * height * g / (y * y);
                }
        }
    return sum.value();
}

}  // namespace detail

// <f, f> = int_{Gamma_0(N)\H} |f|^2 y^k dmu over F and its N translates S T^j F; the latter are
// moved by W_N to (F + j)/N. Cusp parts by Parseval, the compact caps by panel Gauss-Legendre.
inline PeterssonResult petersson_norm(const arith::Eigenform& f, PeterssonMesh mesh = {}) {
    if (mesh.panels < 2 || mesh.order < 2) throw domain_error("petersson_norm: mesh too small");
    const auto s = CoefficientSeries::of(f);
    const HeightReducer red(s.conductor);
    PeterssonResult out;
    out.cusp_infinity = detail::parseval_strip(s, 1.0);
    out.cusp_zero = detail::parseval_strip(s, 1.0 / double(s.conductor));
    out.caps = detail::cap_integral(s, red, mesh, out.evaluations);
    PeterssonMesh half = mesh;
    half.panels = mesh.panels / 2;
    const double coarse_caps = detail::cap_integral(s, red, half, out.evaluations);
    out.value = out.cusp_infinity + out.cusp_zero + out.caps;
    out.coarse = out.cusp_infinity + out.cusp_zero + coarse_caps;
    out.rel_change = std::abs(out.value - out.coarse) / out.value;
    if (!(out.value > 0)) throw accuracy_error("petersson_norm: non-positive result for " + f.label);
    return out;
}

}  // namespace rtlab::lvalues
