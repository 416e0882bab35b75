#pragma once

// The nine acceptance criteria as runnable checks. Shared by the `verify` CLI
// verb and the acceptance test binary.

#include <string>
#include <vector>

namespace symindiv::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

inline constexpr int kCriterionCount = 9;

/// Throws InvalidInput for ids outside 1..9. Never throws for a failing check:
/// unexpected exceptions are caught and reported as failures.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_all();

/// "PASS 1 extension-property (0.12 s): detail"
std::string format_line(const CriterionResult& r);

}  // namespace symindiv::acceptance
