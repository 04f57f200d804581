#pragma once

#include <functional>
#include <string>
#include <vector>

namespace magbound {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool checks_passed = false;
    double seconds = 0;
    double budget_seconds = 0;
    std::vector<std::string> details;

    bool within_budget() const { return seconds <= budget_seconds; }
    bool pass() const { return checks_passed && within_budget(); }
};

inline constexpr int kCriterionCount = 12;

// Frozen outputs of the first verified runs.
namespace frozen {
inline constexpr double kOdeGapQ1Blowup = 2.0232461555;
inline constexpr double kC2ImprovedQ1 = 2.904192257;
inline constexpr double kC2ImprovedQ2 = 2.901836872;
}  // namespace frozen

CriterionResult run_criterion(int id);

// Runs the listed criteria (all when empty); on_result fires after each one.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {},
                                            const std::function<void(const CriterionResult&)>& on_result = {});

std::string format_result_line(const CriterionResult& r);

}  // namespace magbound
