#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rtlab/arith/primes.hpp"
#include "rtlab/errors.hpp"

namespace rtlab::arith {

inline constexpr int kEigenformSchemaVersion = 1;

struct Eigenform {
    std::int64_t level = 1;
    int weight = 4;
    std::string label;
    std::optional<int> atkin_lehner;
    std::vector<double> c;  // c[n - 1] = c_n
    bool rational = true;

    std::int64_t n_max() const { return std::int64_t(c.size()); }

    double coeff(std::int64_t n) const {
        if (n < 1 || n > n_max())
            throw insufficient_coefficients_error(label + ": coefficient c_" + std::to_string(n) + " not available");
        return c[n - 1];
    }

    // a_n = c_n / n^{(k-1)/2}
    double normalized(std::int64_t n) const { return coeff(n) / std::pow(double(n), (weight - 1) / 2.0); }

    void validate() const;
};

namespace detail {

inline void check_relation(const Eigenform& f, bool ok, std::int64_t n, const std::string& rel) {
    if (!ok)
        throw invariant_violation(f.label + ": invariant fails at n = " + std::to_string(n) + " (" + rel + ")");
}

inline bool close(double a, double b, double scale) {
    return std::abs(a - b) <= 1e-9 * std::max(1.0, scale);
}

}  // namespace detail

// c_1 = 1, Deligne at p not dividing N, prime-power recursion, multiplicativity on coprime pairs.
inline void Eigenform::validate() const {
    if (!(level == 1 || is_prime(level))) throw invariant_violation(label + ": level must be prime");
    if (weight < 4 || weight % 2) throw invariant_violation(label + ": weight must be even and >= 4");
    if (c.empty()) throw invariant_violation(label + ": no coefficients");
    for (std::size_t i = 0; i < c.size(); ++i)
        if (!std::isfinite(c[i])) detail::check_relation(*this, false, std::int64_t(i + 1), "finite");
    detail::check_relation(*this, c[0] == 1.0, 1, "c_1 = 1");
    if (atkin_lehner && *atkin_lehner != 1 && *atkin_lehner != -1)
        throw invariant_violation(label + ": atkin_lehner must be +1 or -1");
    const std::int64_t n = n_max();
    const double pk = weight - 1;
    for (int p : primes_up_to(int(n))) {
        if (p != level)
            detail::check_relation(*this, std::abs(normalized(p)) <= 2.0 + 1e-9, p, "Deligne |a_p| <= 2");
        std::int64_t prev = 1, cur = p;
        while (cur <= n / p) {
            const std::int64_t next = cur * p;
            double want, scale;
            if (p == level) {
                want = coeff(p) * coeff(cur);
                scale = std::abs(want);
            } else {
                const double t = std::pow(double(p), pk);
                want = coeff(p) * coeff(cur) - t * coeff(prev);
                scale = std::abs(coeff(p) * coeff(cur)) + t * std::abs(coeff(prev));
            }
            detail::check_relation(*this, detail::close(coeff(next), want, scale), next,
                                   "c_{p^{r+1}} = c_p c_{p^r} - p^{k-1} c_{p^{r-1}}");
            prev = cur;
            cur = next;
        }
    }
    // multiplicativity: c_n = c_{p^e} c_{n / p^e} with p the smallest prime of n
    auto spf = spf_table(int(n));
    for (std::int64_t m = 2; m <= n; ++m) {
        std::int64_t pe = 1, r = m;
        const int p = spf[m];
        while (r % p == 0) r /= p, pe *= p;
        if (r == 1) continue;
        const double want = coeff(pe) * coeff(r);
        detail::check_relation(*this, detail::close(coeff(m), want, std::abs(want)), m, "c_mn = c_m c_n");
    }
}

inline Eigenform parse_eigenform(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw parse_error("eigenform record must be an object");
        if (!j.contains("schema_version")) throw parse_error("eigenform record lacks schema_version");
        if (j.at("schema_version").get<int>() != kEigenformSchemaVersion)
            throw parse_error("unsupported schema_version " + j.at("schema_version").dump());
        Eigenform f;
        f.level = j.at("level").get<std::int64_t>();
        f.weight = j.at("weight").get<int>();
        f.label = j.at("label").get<std::string>();
        if (j.contains("atkin_lehner") && !j.at("atkin_lehner").is_null()) f.atkin_lehner = j.at("atkin_lehner").get<int>();
        for (const auto& v : j.at("coeffs")) {
            if (v.is_number_integer()) {
                f.c.push_back(double(v.get<std::int64_t>()));
            } else if (v.is_string()) {
                f.rational = false;
                const auto s = v.get<std::string>();
                std::size_t used = 0;
                const double x = std::stod(s, &used);
                if (used != s.size()) throw parse_error("bad decimal coefficient '" + s + "'");
                f.c.push_back(x);
            } else if (v.is_number()) {
                f.rational = false;
                f.c.push_back(v.get<double>());
            } else {
                throw parse_error("coefficient must be an integer or a decimal string");
            }
        }
        f.validate();
        return f;
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("eigenform record: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw parse_error(std::string("eigenform record: ") + e.what());
    }
}

// One JSON object per line; blank lines ignored.
inline std::vector<Eigenform> load_eigenforms(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    std::vector<Eigenform> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
        out.push_back(parse_eigenform(j));
    }
    return out;
}

inline nlohmann::json to_json(const Eigenform& f) {
    nlohmann::json j{{"schema_version", kEigenformSchemaVersion}, {"level", f.level}, {"weight", f.weight}, {"label", f.label}};
    if (f.atkin_lehner) j["atkin_lehner"] = *f.atkin_lehner;
    auto& cs = j["coeffs"] = nlohmann::json::array();
    for (double x : f.c) {
        if (f.rational) {
            cs.push_back(std::int64_t(std::llround(x)));
        } else {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            cs.push_back(std::string(buf));
        }
    }
    return j;
}

// c_n for n <= n_max from c_p (p prime, p != N) and c_N.
inline std::vector<double> hecke_extend(const std::map<std::int64_t, double>& cp, std::int64_t N, int k,
                                        std::int64_t n_max, std::optional<double> cN = std::nullopt) {
    if (n_max < 1) throw domain_error("hecke_extend: n_max must be positive");
    std::vector<double> c(n_max + 1, 0.0);
    c[1] = 1.0;
    for (int p : primes_up_to(int(n_max))) {
        double cpv;
        if (p == N) {
            if (!cN) throw missing_prime_error("hecke_extend: c_N not supplied for N = " + std::to_string(N));
            cpv = *cN;
        } else {
            auto it = cp.find(p);
            if (it == cp.end()) throw missing_prime_error("hecke_extend: missing c_p for p = " + std::to_string(p));
            cpv = it->second;
        }
        const double t = std::pow(double(p), k - 1);
        std::int64_t prev = 1, cur = p;
        c[p] = cpv;
        while (cur <= n_max / p) {
            const std::int64_t next = cur * p;
            c[next] = (p == N) ? cpv * c[cur] : cpv * c[cur] - t * c[prev];
            prev = cur;
            cur = next;
        }
    }
    auto spf = spf_table(int(n_max));
    for (std::int64_t m = 2; m <= n_max; ++m) {
        std::int64_t pe = 1, r = m;
        const int p = spf[m];
        while (r % p == 0) r /= p, pe *= p;
        if (r != 1) c[m] = c[pe] * c[r];
    }
    c.erase(c.begin());
    return c;
}

}  // namespace rtlab::arith
