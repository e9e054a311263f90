// Acceptance gate: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion. Exits non-zero on any failure.

#include <iostream>

#include "semilab/checks.hpp"

int main() {
    const int failures = semilab::checks::run_acceptance(std::cout);
    if (failures > 0) {
        std::cout << failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all acceptance criteria passed\n";
    return 0;
}
