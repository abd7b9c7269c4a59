#pragma once

#include <cmath>
#include <numbers>
#include <string>

#include "rtlab/arith/primes.hpp"
#include "rtlab/errors.hpp"
#include "rtlab/numerics/quadrature.hpp"

namespace rtlab::measures {

enum class Coordinate { x_interval, s_circle };

// mu_+ (delta = +1) or mu_- (delta = -1) at the prime p.
struct SatakeMeasure {
    int p = 2;
    int delta = 1;
    Coordinate coordinate = Coordinate::x_interval;

    SatakeMeasure() = default;
    SatakeMeasure(int prime, int sign, Coordinate c = Coordinate::x_interval) : p(prime), delta(sign), coordinate(c) {
        if (!arith::is_prime(p)) throw domain_error("SatakeMeasure: p must be prime");
        if (delta != 1 && delta != -1) throw domain_error("SatakeMeasure: delta must be +1 or -1");
    }
};

inline double sato_tate_density(double x) {
    if (x < -2.0 || x > 2.0) throw domain_error("sato_tate_density: x outside [-2, 2]");
    return std::sqrt(std::max(0.0, 4.0 - x * x)) / (2.0 * std::numbers::pi);
}

inline double density(const SatakeMeasure& m, double x) {
    if (x < -2.0 || x > 2.0) throw domain_error("density: x outside [-2, 2]");
    if (x == 2.0 || x == -2.0) return 0.0;
    const double p = m.p;
    const double r = std::sqrt(p) + 1.0 / std::sqrt(p);
    const double root = std::sqrt(4.0 - x * x);
    if (m.delta == 1) return (p - 1.0) / (2.0 * std::numbers::pi) * root / ((r - x) * (r - x));
    return (p + 1.0) / (2.0 * std::numbers::pi) * root / (r * r - x * x);
}

// Pulls an x-integral back to theta in [0, pi] via x = 2 cos(theta).
template <class F>
numerics::QuadratureResult<double> integrate_over_theta(F&& g, double x_lo, double x_hi,
                                                        const numerics::QuadratureSpec& spec) {
    if (x_lo < -2.0 || x_hi > 2.0 || x_lo > x_hi) throw domain_error("integrate_over_theta: bad interval");
    const double t_lo = std::acos(x_hi / 2.0), t_hi = std::acos(x_lo / 2.0);
    return numerics::integrate(
        [&](double t) {
            const double x = 2.0 * std::cos(t);
            return g(x) * 2.0 * std::sin(t);
        },
        t_lo, t_hi, spec);
}

inline numerics::QuadratureResult<double> mass(const SatakeMeasure& m, double x_lo, double x_hi,
                                               const numerics::QuadratureSpec& spec = {1e-13, 1e-15}) {
    return integrate_over_theta([&](double x) { return density(m, x); }, x_lo, x_hi, spec);
}

inline numerics::QuadratureResult<double> total_mass(const SatakeMeasure& m,
                                                     const numerics::QuadratureSpec& spec = {1e-13, 1e-15}) {
    return mass(m, -2.0, 2.0, spec);
}

// int x^j dmu.
inline numerics::QuadratureResult<double> raw_moment(const SatakeMeasure& m, int j,
                                                     const numerics::QuadratureSpec& spec = {1e-13, 1e-16}) {
    return integrate_over_theta([&](double x) { return std::pow(x, j) * density(m, x); }, -2.0, 2.0, spec);
}

inline numerics::QuadratureResult<double> sato_tate_raw_moment(int j,
                                                               const numerics::QuadratureSpec& spec = {1e-13, 1e-16}) {
    return integrate_over_theta([&](double x) { return std::pow(x, j) * sato_tate_density(x); }, -2.0, 2.0, spec);
}

}  // namespace rtlab::measures
