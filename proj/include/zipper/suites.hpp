#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zipper {

struct CaseResult {
    std::string name;
    bool passed;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<CaseResult> cases;
    bool all_passed() const;
};

// theorem-a, theorem-b, theorem-c, theorem-d, multiplier, death, beta,
// reversibility, oracle-fuzz, knots, serialization.
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, std::uint64_t seed = 20130520);

}  // namespace zipper
