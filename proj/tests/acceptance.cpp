#include <cstdio>
#include <iostream>

#include "diagbase/acceptance.hpp"

int main(int argc, char** argv) {
    diagbase::AcceptanceOptions opts;
    if (argc > 1) opts.catalog_path = argv[1];
    auto results = diagbase::run_acceptance(opts);
    bool all = true;
    for (const auto& r : results) {
        std::printf("criterion %d: %s  %s (%s) [%.1fs]\n", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str(),
                    r.detail.c_str(), r.seconds);
        all = all && r.passed;
    }
    std::fflush(stdout);
    return all ? 0 : 1;
}
