// One PASS/FAIL line per acceptance criterion. Bounds and time limits are
// fixed here and in the checks themselves; nothing is read from the command
// line.
#include <cstdio>
#include <iostream>

#include "surfmaps/verify.hpp"

int main() {
    surfmaps::VerifyOptions o;
    o.edges = 4;
    o.seed = 1;
    bool all = true;
    for (const auto& r : surfmaps::run_suite("all", o)) {
        std::printf("%s criterion %d: %s [compared %lld, %.1fs]\n", r.pass ? "PASS" : "FAIL", r.criterion, r.name.c_str(),
                    r.compared, r.seconds);
        if (!r.pass) {
            std::printf("    %s\n", r.detail.c_str());
            if (!r.counterexample.empty()) std::printf("    counterexample: %s\n", r.counterexample.c_str());
        }
        std::fflush(stdout);
        all = all && r.pass;
    }
    return all ? 0 : 1;
}
