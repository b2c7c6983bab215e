#pragma once
// The library's end-to-end identity suite: every headline value the code is
// supposed to reproduce, checked against an independently computed or pinned
// expectation, with the precision of each comparison recorded.  Shared by
// the acceptance test binary and the command-line `selftest`.

#include <cstdint>
#include <string>
#include <vector>

namespace fontaine {

struct CheckRow {
    std::string statement; // which identity is being checked
    std::string expected;  // the pinned value
    std::string computed;  // what the library produced
    std::string precision; // the modulus at which the comparison is exact
    bool pass = false;
};

struct CheckItem {
    std::string name;
    std::vector<CheckRow> rows;
    bool pass = false;
};

// Runs the twelve check groups in a fixed order.  All randomized inputs are
// drawn from the given seed, so a (seed -> output) pair is reproducible
// byte for byte.
std::vector<CheckItem> run_identity_checks(uint64_t seed);

} // namespace fontaine
