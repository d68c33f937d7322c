// Acceptance gate: every criterion prints exactly one pass/fail line.
// Exit 0 iff all pass. Tolerances live next to each criterion.

#include <cstdio>

#include "spnet/verify.hpp"

int main() {
    auto results = spnet::run_acceptance("all", [](const spnet::CriterionResult& r) {
        std::printf("criterion %2d [%s] %-52s (%6.1f s)  %s\n", r.id, r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.seconds, r.detail.c_str());
        std::fflush(stdout);
    });
    int passed = 0;
    for (const auto& r : results) passed += r.pass ? 1 : 0;
    std::printf("acceptance: %d/%zu criteria passed\n", passed, results.size());
    return spnet::all_pass(results) ? 0 : 1;
}
