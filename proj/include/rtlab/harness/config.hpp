#pragma once

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdint>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rtlab/arith/characters.hpp"
#include "rtlab/arith/primes.hpp"
#include "rtlab/errors.hpp"

namespace rtlab::harness {

// Subinterval of [-2, 2] with chosen closed / open ends.
struct Interval {
    double lo = -2.0, hi = 2.0;
    bool lo_closed = true, hi_closed = true;

    static Interval closed(double a, double b) { return {a, b, true, true}; }
    static Interval half_open(double a, double b) { return {a, b, true, false}; }  // [a, b)
    static Interval open_closed(double a, double b) { return {a, b, false, true}; }  // (a, b]

    bool contains(double x) const {
        const bool left = lo_closed ? x >= lo : x > lo;
        const bool right = hi_closed ? x <= hi : x < hi;
        return left && right;
    }
    bool empty() const { return lo > hi || (lo == hi && !(lo_closed && hi_closed)); }
    double length() const { return empty() ? 0.0 : hi - lo; }

    void validate() const {
        if (!(lo >= -2.0 && hi <= 2.0)) throw domain_error("Interval: must lie in [-2, 2]");
        if (lo > hi) throw domain_error("Interval: lo > hi");
    }

    std::string str() const {
        std::ostringstream os;
        os << (lo_closed ? '[' : '(') << lo << ", " << hi << (hi_closed ? ']' : ')');
        return os.str();
    }
};

// [-2, -1), [-1, 0), [0, 1), [1, 2]
inline std::vector<Interval> fixed_partition() {
    return {Interval::half_open(-2, -1), Interval::half_open(-1, 0), Interval::half_open(0, 1), Interval::closed(1, 2)};
}

struct ExperimentConfig {
    std::int64_t D = -4;
    int k = 4;
    int p = 13;
    Interval J;
    std::vector<std::int64_t> levels;
    std::int64_t coefficient_depth = 1000;
    double agree_tol = 1e-8;       // AFE vs Mellin
    double fe_tol = 1e-7;          // functional-equation residual
    double petersson_tol = 1e-5;   // mesh self-convergence
    double pair_tol = 1e-8;        // n+ vs n-
    std::string forms_path;
    std::string output_dir = ".";
    std::string name = "average";

    int chi_p() const { return arith::QuadraticCharacter(D)(p); }

    void validate() const {
        const arith::QuadraticCharacter chi(D);
        if (k < 4 || k % 2) throw domain_error("ExperimentConfig: k must be even and >= 4");
        if (!arith::is_prime(p)) throw domain_error("ExperimentConfig: p must be prime");
        if (chi(p) == 0) throw domain_error("ExperimentConfig: p divides D");
        J.validate();
        if (J.empty()) throw domain_error("ExperimentConfig: J is empty");
        if (coefficient_depth < 1) throw domain_error("ExperimentConfig: coefficient depth must be positive");
        std::set<std::int64_t> seen;
        for (auto N : levels) {
            if (!arith::is_prime(N)) throw domain_error("ExperimentConfig: level " + std::to_string(N) + " is not prime");
            if (N == p || chi(N) == 0)
                throw domain_error("ExperimentConfig: level " + std::to_string(N) + " divides pD");
            if (chi(-N) != 1)
                throw domain_error("ExperimentConfig: level " + std::to_string(N) + " has chi(-N) != 1");
            if (!seen.insert(N).second) throw domain_error("ExperimentConfig: duplicate level " + std::to_string(N));
        }
    }
};

// Primes N <= n_max with chi_D(-N) = 1 and N not dividing pD.
inline std::vector<std::int64_t> admissible_levels(std::int64_t D, int p, std::int64_t n_max) {
    const arith::QuadraticCharacter chi(D);
    std::vector<std::int64_t> out;
    for (std::int64_t N = 2; N <= n_max; ++N)
        if (arith::is_prime(N) && N != p && chi(N) != 0 && chi(-N) == 1) out.push_back(N);
    return out;
}

namespace detail {

inline std::vector<std::int64_t> parse_levels(const std::string& text, std::int64_t D, int p) {
    std::string t = text;
    std::erase_if(t, [](char c) { return c == ' ' || c == '\t'; });
    if (t.empty()) return {};
    if (t.rfind("admissible:", 0) == 0) return admissible_levels(D, p, std::stoll(t.substr(11)));
    std::vector<std::int64_t> out;
    std::stringstream ss(t);
    for (std::string item; std::getline(ss, item, ',');) {
        std::size_t used = 0;
        const auto v = std::stoll(item, &used);
        if (used != item.size()) throw parse_error("config: bad level '" + item + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace detail

// Flat key = value text (INI syntax, no sections). Relative paths are taken from the config's directory.
inline ExperimentConfig load_config(const std::string& path) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(path, tree);
    } catch (const pt::ini_parser_error& e) {
        throw parse_error("config: " + std::string(e.what()));
    }
    static const std::set<std::string> known = {"discriminant", "weight", "prime", "interval_lo", "interval_hi",
                                                "levels", "coefficient_depth", "agree_tol", "fe_tol",
                                                "petersson_tol", "pair_tol", "forms", "output_dir", "name"};
    for (auto& [key, node] : tree) {
        if (!known.count(key)) throw parse_error("config: unknown key '" + key + "'");
        if (!node.empty()) throw parse_error("config: sections are not supported ('" + key + "')");
    }
    ExperimentConfig c;
    try {
        c.D = tree.get<std::int64_t>("discriminant", c.D);
        c.k = tree.get<int>("weight", c.k);
        c.p = tree.get<int>("prime", c.p);
        c.J = Interval::closed(tree.get<double>("interval_lo", -2.0), tree.get<double>("interval_hi", 2.0));
        c.levels = detail::parse_levels(tree.get<std::string>("levels", ""), c.D, c.p);
        c.coefficient_depth = tree.get<std::int64_t>("coefficient_depth", c.coefficient_depth);
        c.agree_tol = tree.get<double>("agree_tol", c.agree_tol);
        c.fe_tol = tree.get<double>("fe_tol", c.fe_tol);
        c.petersson_tol = tree.get<double>("petersson_tol", c.petersson_tol);
        c.pair_tol = tree.get<double>("pair_tol", c.pair_tol);
        c.forms_path = tree.get<std::string>("forms", "");
        c.output_dir = tree.get<std::string>("output_dir", c.output_dir);
        c.name = tree.get<std::string>("name", c.name);
    } catch (const pt::ptree_bad_data& e) {
        throw parse_error("config: " + std::string(e.what()));
    } catch (const std::invalid_argument& e) {
        throw parse_error("config: bad level list");
    }
    const auto base = std::filesystem::path(path).parent_path();
    auto resolve = [&](std::string& p) {
        if (!p.empty() && std::filesystem::path(p).is_relative()) p = (base / p).lexically_normal().string();
    };
    resolve(c.forms_path);
    resolve(c.output_dir);
    c.validate();
    return c;
}

}  // namespace rtlab::harness
