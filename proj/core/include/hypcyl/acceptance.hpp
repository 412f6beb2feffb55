#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace hypcyl::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    std::uint64_t master_seed = 20150405;
    int workers = 1;
    std::vector<int> only;  // run a subset of criterion ids; empty = all
};

/// Runs the cross-check suite and prints one pass/fail line per criterion.
std::vector<CriterionResult> run(const Options& opts, std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace hypcyl::acceptance
