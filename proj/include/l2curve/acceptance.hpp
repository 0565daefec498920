#pragma once

#include "l2curve/config.hpp"

#include <ostream>
#include <string>
#include <vector>

namespace l2c {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string details;
};

// Runs the full acceptance suite (criteria 1-14) with fixed seeds and
// tolerances; progress lines go to `progress` when given.
std::vector<CriterionResult> run_acceptance(const NumericConfig& cfg, std::ostream* progress = nullptr);

} // namespace l2c
