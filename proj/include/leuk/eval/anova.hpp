#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace leuk::eval {

struct AnovaResult {
    double f_statistic = 0.0;  ///< +infinity when within-group variance is 0 and between-group is not
    std::size_t df_between = 0;
    std::size_t df_within = 0;
    double p_value = 1.0;
};

/// One-way ANOVA. Requires ≥ 2 groups with ≥ 2 values each
/// (PreconditionError otherwise). All values equal gives F = 0, p = 1.
AnovaResult anova_oneway(std::span<const std::vector<double>> groups);

/// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction with
/// relative tolerance 1e-10. Throws ConvergenceError after 10000 iterations.
double regularized_incomplete_beta(double a, double b, double x);

/// P(F > f) for F ~ F(d1, d2).
double f_distribution_sf(double f, double d1, double d2);

}  // namespace leuk::eval
