#pragma once

#include <stdexcept>
#include <string>

namespace rtlab {

struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

// Argument sits on a pole of a meromorphic function.
struct pole_error : domain_error {
    using domain_error::domain_error;
};

struct accuracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct nan_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invalid_orbit_error : domain_error {
    using domain_error::domain_error;
};

struct window_too_small_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct unsupported_input_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct invariant_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct missing_prime_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct insufficient_coefficients_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ambiguous_sign_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct degenerate_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace rtlab
