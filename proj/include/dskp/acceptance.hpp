#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dskp {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;
    double seconds = 0.0;
};

// The full verification battery; exact checks carry zero tolerance.
std::vector<CriterionResult> run_acceptance_suite(uint64_t seed);

} // namespace dskp
