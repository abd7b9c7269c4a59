#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <concepts>
#include <limits>
#include <queue>
#include <type_traits>
#include <vector>

#include "rtlab/errors.hpp"
#include "rtlab/numerics/summation.hpp"

namespace rtlab::numerics {

enum class DomainKind { finite_interval, half_line, rectangle, half_plane_strip };

struct QuadratureSpec {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 4000;
    DomainKind domain = DomainKind::finite_interval;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
            throw domain_error("QuadratureSpec: tolerances must be strictly positive");
        if (max_subdivisions < 1) throw domain_error("QuadratureSpec: max_subdivisions must be >= 1");
    }
};

template <class T>
struct QuadratureResult {
    T value{};
    double error = 0.0;
    int evaluations = 0;
    int subdivisions = 0;
    bool converged = false;

    const T& value_or_throw(const char* what = "integrate") const {
        if (!converged) throw accuracy_error(std::string(what) + ": accuracy not met");
        return value;
    }
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
inline constexpr double gk15_x[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
inline constexpr double gk15_wk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
inline constexpr double gk15_wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

template <class T>
inline double magnitude(const T& v) {
    return std::abs(v);
}

template <class T>
inline bool finite_value(const T& v) {
    if constexpr (std::is_same_v<T, double>)
        return std::isfinite(v);
    else
        return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <class T>
struct Segment {
    double a, b;
    T value;
    double error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

template <class T, class F>
Segment<T> gk15(F& f, double a, double b, int& evals) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    T fc = f(c);
    if (!finite_value(fc)) throw nan_error("integrate: non-finite integrand value");
    T resk = fc * gk15_wk[7];
    T resg = fc * gk15_wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * gk15_x[j];
        T f1 = f(c - dx), f2 = f(c + dx);
        if (!finite_value(f1) || !finite_value(f2)) throw nan_error("integrate: non-finite integrand value");
        resk += (f1 + f2) * gk15_wk[j];
        if (j % 2 == 1) resg += (f1 + f2) * gk15_wg[j / 2];
    }
    evals += 15;
    return {a, b, resk * h, magnitude(T((resk - resg) * h))};
}

template <class T, class F>
QuadratureResult<T> adaptive(F& f, double a, double b, const QuadratureSpec& spec) {
    QuadratureResult<T> out;
    std::priority_queue<Segment<T>> heap;
    heap.push(gk15<T>(f, a, b, out.evaluations));
    std::vector<Segment<T>> frozen;
    T total = heap.top().value;
    double err = heap.top().error;
    while (true) {
        double target = std::max(spec.abs_tol, spec.rel_tol * magnitude(total));
        if (err <= target) {
            out.converged = true;
            break;
        }
        if (heap.empty() || out.subdivisions >= spec.max_subdivisions) break;
        Segment<T> s = heap.top();
        heap.pop();
        const double m = 0.5 * (s.a + s.b);
        if (!(m > s.a && m < s.b)) {
            frozen.push_back(s);
            continue;
        }
        Segment<T> l = gk15<T>(f, s.a, m, out.evaluations);
        Segment<T> r = gk15<T>(f, m, s.b, out.evaluations);
        ++out.subdivisions;
        heap.push(l);
        heap.push(r);
        total += (l.value + r.value) - s.value;
        err += (l.error + r.error) - s.error;
    }
    // final total from scratch, in left-to-right order
    std::vector<Segment<T>> segs(frozen);
    while (!heap.empty()) {
        segs.push_back(heap.top());
        heap.pop();
    }
    std::sort(segs.begin(), segs.end(), [](const Segment<T>& x, const Segment<T>& y) { return x.a < y.a; });
    double e = 0.0;
    if constexpr (std::is_same_v<T, double>) {
        CompensatedSum cs;
        for (auto& g : segs) cs += g.value, e += g.error;
        total = cs.value();
    } else {
        ComplexCompensatedSum cs;
        for (auto& g : segs) cs += g.value, e += g.error;
        total = cs.value();
    }
    err = e;
    out.value = total;
    out.error = err;
    return out;
}

}  // namespace detail

// 1-D integral over [a, b]; either endpoint may be infinite.
// Half-lines use t = a + u/(1-u); the whole line uses t = u/(1-u^2).
template <class F>
auto integrate(F&& f, double a, double b, const QuadratureSpec& spec = {}) {
    using T = std::decay_t<decltype(f(0.0))>;
    spec.validate();
    if (a == b) return QuadratureResult<T>{T{}, 0.0, 0, 0, true};
    if (a > b) {
        auto r = integrate(f, b, a, spec);
        r.value = -r.value;
        return r;
    }
    const bool ainf = std::isinf(a), binf = std::isinf(b);
    if (!ainf && !binf) {
        auto g = [&](double t) -> T { return f(t); };
        return detail::adaptive<T>(g, a, b, spec);
    }
    if (!ainf && binf) {
        auto g = [&](double u) -> T {
            const double om = 1.0 - u;
            return f(a + u / om) * (1.0 / (om * om));
        };
        return detail::adaptive<T>(g, 0.0, 1.0, spec);
    }
    if (ainf && !binf) {
        auto g = [&](double u) -> T {
            const double om = 1.0 - u;
            return f(b - u / om) * (1.0 / (om * om));
        };
        return detail::adaptive<T>(g, 0.0, 1.0, spec);
    }
    auto g = [&](double u) -> T {
        const double om = 1.0 - u * u;
        return f(u / om) * ((1.0 + u * u) / (om * om));
    };
    return detail::adaptive<T>(g, -1.0, 1.0, spec);
}

// Iterated 2-D integral: outer x over [a, b], inner y over [lo(x), hi(x)].
template <class F, class Lo, class Hi>
    requires std::invocable<Lo, double> && std::invocable<Hi, double>
auto integrate_2d(F&& f, double a, double b, Lo&& lo, Hi&& hi, const QuadratureSpec& outer_spec = {},
                  const QuadratureSpec& inner_spec = {}) {
    using T = std::decay_t<decltype(f(0.0, 0.0))>;
    bool inner_ok = true;
    double inner_err_sum = 0.0;
    double inner_mag_sum = 0.0;
    int inner_evals = 0;
    auto outer = [&](double x) -> T {
        auto r = integrate([&](double y) -> T { return f(x, y); }, lo(x), hi(x), inner_spec);
        inner_evals += r.evaluations;
        inner_ok = inner_ok && r.converged;
        inner_err_sum += r.error;
        inner_mag_sum += std::abs(r.value);
        return r.value;
    };
    auto res = integrate(outer, a, b, outer_spec);
    res.evaluations += inner_evals;
    // magnitude-weighted mean relative inner error
    if (inner_mag_sum > 0.0) res.error += inner_err_sum / inner_mag_sum * std::abs(res.value);
    res.converged = res.converged && inner_ok;
    return res;
}

// Rectangle / strip variant with constant inner bounds.
template <class F>
auto integrate_2d(F&& f, double a, double b, double c, double d, const QuadratureSpec& outer_spec = {},
                  const QuadratureSpec& inner_spec = {}) {
    return integrate_2d(
        std::forward<F>(f), a, b, [c](double) { return c; }, [d](double) { return d; }, outer_spec, inner_spec);
}

}  // namespace rtlab::numerics
