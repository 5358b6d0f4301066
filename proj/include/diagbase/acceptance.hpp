#pragma once

#include <string>
#include <vector>

#include "diagbase/report.hpp"

namespace diagbase {

struct AcceptanceOptions {
    std::string catalog_path;  // empty: default catalog
    std::size_t workers = 0;   // 0: hardware concurrency
    std::uint64_t seed = 0x5EED;
    std::size_t mc_samples = 10'000;
    std::size_t oracle_sets = 500;
    std::size_t witness_samples = 200;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0;
    Json data;
};

/// Runs criteria 1..9 in order. Exceptions inside a criterion mark it failed.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

Json to_json(const CriterionResult& r, bool timing = true);

}  // namespace diagbase
