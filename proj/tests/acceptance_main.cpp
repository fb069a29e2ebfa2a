// Acceptance driver: runs every criterion of the reproduction suite and
// prints one PASS/FAIL line per criterion.  Exit status reflects the overall
// outcome so ctest reports failures.

#include <cstdlib>
#include <iostream>

#include "dpcount/repro.hpp"

int main() {
    int workers = 8;
    if (const char* env = std::getenv("DPC_WORKERS")) {
        int w = std::atoi(env);
        if (w >= 1) workers = w;
    }
    auto suite = dpc::repro::run_acceptance(workers, &std::cout);
    int passed = 0;
    for (const auto& c : suite.criteria)
        if (c.pass) ++passed;
    std::cout << "\n" << passed << "/" << suite.criteria.size() << " criteria passed\n";
    return suite.all_pass() ? 0 : 1;
}
