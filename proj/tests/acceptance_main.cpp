// Acceptance gate: runs every numbered criterion and prints one line each.
// Exit status is nonzero when any non-warning criterion fails.  Pass --slow
// (or set FRACGEO_SLOW=1) to include the coarse n=3 chain.

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "fracgeo/verify.hpp"

int main(int argc, char** argv) {
    bool slow = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--slow") == 0) slow = true;
    if (const char* env = std::getenv("FRACGEO_SLOW"))
        if (env[0] != '\0' && env[0] != '0') slow = true;

    fracgeo::AcceptanceOutcome outcome;
    try {
        outcome = fracgeo::run_acceptance(slow);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
        return 1;
    }

    for (const auto& c : outcome.criteria) {
        const char* tag = c.passed ? "PASS" : (c.warn_only ? "WARN" : "FAIL");
        std::printf("criterion %d: %s - %s - %s (%.1fs)\n", c.id, tag, c.name.c_str(),
                    c.detail.c_str(), c.seconds);
    }
    const bool ok = outcome.all_passed();
    std::printf("acceptance: %s (%zu criteria%s)\n", ok ? "PASS" : "FAIL",
                outcome.criteria.size(), slow ? ", slow set included" : "");
    return ok ? 0 : 1;
}
