#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leuk/eval/anova.hpp"
#include "leuk/eval/harness.hpp"

namespace leuk::eval {

/// ANOVA over each report's fold accuracies; nullopt with fewer than two
/// reports or a report with fewer than two accuracies.
std::optional<AnovaResult> anova_of(const std::vector<EvalReport>& reports);

/// Fixed-width comparison table, rows by descending mean accuracy (stable
/// for equal means), then an ANOVA footer line.
std::string compare_report(const std::vector<EvalReport>& reports, const std::optional<AnovaResult>& anova);

/// "ANOVA: F(1,4)=1.50, p=0.2879"
std::string anova_footer(const std::optional<AnovaResult>& anova);

/// JSON sibling of the table. An infinite F is written as the string "inf".
std::string report_json(const std::vector<EvalReport>& reports, const std::optional<AnovaResult>& anova);

}  // namespace leuk::eval
