#pragma once

// Acceptance checks: one entry per numbered criterion plus an atlas-only
// invariance sweep. Shared by the acceptance binary and `pwldyn verify`.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pwl {

struct CriterionResult {
    std::string id;                    // "1".."12" or "atlas"
    std::string title;
    bool pass = false;
    std::vector<std::string> notes;    // observed values and failures
    double seconds = 0;
};

enum class Suite { fast, full, atlas };
std::optional<Suite> parse_suite(std::string_view s);

// fast: criteria budgeted at 10 s or less (1, 2, 4, 5, 6); full: 1..12;
// atlas: invariance of every atlas case.
std::vector<std::string> suite_ids(Suite s);

// Throws std::invalid_argument for an unknown id.
CriterionResult run_check(const std::string& id);

// Runs the checks concurrently; results come back in suite order.
std::vector<CriterionResult> run_suite(Suite s);

}  // namespace pwl
