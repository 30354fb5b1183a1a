#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ilw::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double wall_ms = 0.0;
};

// Runs the 14 release criteria in order. When `progress` is given, one
// PASS/FAIL line is printed per criterion as it completes.
std::vector<CriterionResult> run_all(std::ostream* progress = nullptr);

bool all_pass(const std::vector<CriterionResult>& results);

} // namespace ilw::acceptance
