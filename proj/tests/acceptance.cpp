// Acceptance suite: one line per criterion, exit status counts failures.
#include <chrono>
#include <cstdio>

#include "zipper/suites.hpp"

int main() {
    using clock = std::chrono::steady_clock;
    const char* criteria[][2] = {
        {"theorem-a", "1. I A = A readback equality"},
        {"theorem-b", "2. (K A) B = A readback equality"},
        {"theorem-c", "3. S A B C = (A C)(B C) mod loops"},
        {"theorem-d", "4. (S K) K = I"},
        {"multiplier", "5. every combinator multiplies into two copies"},
        {"death", "6. termination kills to loops (I:1, K:2, S:3)"},
        {"beta", "7. click;zip is the beta rewiring"},
        {"reversibility", "8. reverse(apply) is the identity, all moves"},
        {"oracle-fuzz", "9. 200 random terms agree with the term oracle"},
        {"knots", "10. zip commutes with R2 through the knot encoding"},
        {"serialization", "11. parse after emit is the identity mod iso"},
    };
    int failures = 0;
    for (const auto& [suite, label] : criteria) {
        auto t0 = clock::now();
        zipper::SuiteResult res = zipper::run_suite(suite);
        double secs = std::chrono::duration<double>(clock::now() - t0).count();
        int passed = 0;
        for (const auto& c : res.cases) passed += c.passed ? 1 : 0;
        bool ok = res.all_passed();
        std::printf("%s  %s (%d/%zu cases, %.2fs)\n", ok ? "PASS" : "FAIL", label, passed,
                    res.cases.size(), secs);
        if (!ok) {
            for (const auto& c : res.cases)
                if (!c.passed)
                    std::printf("      failed: %s%s%s\n", c.name.c_str(),
                                c.detail.empty() ? "" : " — ", c.detail.c_str());
            ++failures;
        }
    }
    return failures;
}
