// Acceptance suite: runs every verification criterion at full corpus size
// and prints one pass/fail line per criterion.
#include <cstdio>

#include "keller/suite.hpp"

int main() {
    keller::SuiteConfig cfg;  // defaults are the full corpus sizes
    auto outcomes = keller::run_verification_suite(cfg);
    bool ok = true;
    for (const auto& o : outcomes) {
        std::printf("[%s] %s — %s\n", o.passed ? "PASS" : "FAIL", o.name.c_str(),
                    o.detail.c_str());
        ok &= o.passed;
    }
    return ok ? 0 : 1;
}
