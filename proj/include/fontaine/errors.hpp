#pragma once

#include <stdexcept>
#include <string>

namespace fontaine {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

// Structurally bad input: wrong modulus, mismatched rings, malformed JSON,
// a series fed to a solver whose preconditions it cannot meet.
struct input_error : error {
    explicit input_error(const std::string& msg) : error(msg) {}
};

// The requested computation cannot be carried out at the configured
// precision or caps.  Raising n, N, the pole cap or the level cap (as the
// message says) makes these go away; the library never silently returns a
// value that might be wrong.
struct precision_error : error {
    explicit precision_error(const std::string& msg) : error(msg) {}
};

struct precision_exhausted : precision_error {
    explicit precision_exhausted(const std::string& msg) : precision_error(msg) {}
};

struct pole_overflow : precision_error {
    explicit pole_overflow(const std::string& msg) : precision_error(msg) {}
};

struct level_cap_exceeded : precision_error {
    explicit level_cap_exceeded(const std::string& msg) : precision_error(msg) {}
};

struct truncation_too_small : precision_error {
    explicit truncation_too_small(const std::string& msg) : precision_error(msg) {}
};

struct support_overflow : precision_error {
    explicit support_overflow(const std::string& msg) : precision_error(msg) {}
};

struct not_a_unit : input_error {
    explicit not_a_unit(const std::string& msg) : input_error(msg) {}
};

// An exact linear system over Z/p^n admitted no solution.  Carries enough
// text to point at the offending row.
struct singular_system : error {
    explicit singular_system(const std::string& msg) : error(msg) {}
};

struct not_eventually_periodic : input_error {
    explicit not_eventually_periodic(const std::string& msg) : input_error(msg) {}
};

struct not_homomorphism : input_error {
    explicit not_homomorphism(const std::string& msg) : input_error(msg) {}
};

// Parameter points on the excluded locus (delta1 == delta2) are rejected
// with this so callers can tell them apart from plain bad input.
struct pathological_point : input_error {
    explicit pathological_point(const std::string& msg) : input_error(msg) {}
};

} // namespace fontaine
