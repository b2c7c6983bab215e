// Acceptance gate: runs the full identity suite and prints one PASS/FAIL
// line per criterion.  Failing rows are printed in full (statement, expected
// value, computed value, precision of the comparison).  Exit status is 0
// only if every criterion passes.
#include "fontaine/checks.hpp"

#include <cstdio>

int main() {
    const uint64_t seed = 20260819u;
    std::vector<fontaine::CheckItem> items = fontaine::run_identity_checks(seed);
    int idx = 0;
    bool all = true;
    for (const fontaine::CheckItem& item : items) {
        ++idx;
        int good = 0;
        for (const fontaine::CheckRow& r : item.rows) good += r.pass ? 1 : 0;
        std::printf("[%2d] %s %s (%d/%zu rows)\n", idx,
                    item.pass ? "PASS" : "FAIL", item.name.c_str(), good,
                    item.rows.size());
        if (!item.pass) {
            all = false;
            for (const fontaine::CheckRow& r : item.rows) {
                if (r.pass) continue;
                std::printf("       row: %s\n         expected %s, computed %s",
                            r.statement.c_str(), r.expected.c_str(),
                            r.computed.c_str());
                if (!r.precision.empty())
                    std::printf(" (%s)", r.precision.c_str());
                std::printf("\n");
            }
        }
    }
    std::printf("acceptance: %s\n", all ? "all criteria pass" : "FAILURES above");
    return all ? 0 : 1;
}
