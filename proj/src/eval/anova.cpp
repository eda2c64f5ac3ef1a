#include "leuk/eval/anova.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "leuk/core/error.hpp"

namespace leuk::eval {
namespace {

constexpr double kTolerance = 1e-10;
constexpr int kMaxIterations = 10000;
constexpr double kTiny = 1e-300;

// Continued fraction for I_x(a, b), modified Lentz evaluation.
double beta_continued_fraction(double a, double b, double x) {
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIterations; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) <= kTolerance) return h;
    }
    throw ConvergenceError("incomplete beta continued fraction did not converge (a=" + std::to_string(a) +
                           ", b=" + std::to_string(b) + ", x=" + std::to_string(x) + ")");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw PreconditionError("incomplete beta: a and b must be positive");
    if (!(x >= 0.0 && x <= 1.0)) throw PreconditionError("incomplete beta: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double log_front =
        std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) + a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    // The fraction converges fastest for x below the mean; use symmetry above it.
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double f_distribution_sf(double f, double d1, double d2) {
    if (std::isinf(f)) return 0.0;
    if (!(f > 0.0)) return 1.0;
    return regularized_incomplete_beta(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * f));
}

AnovaResult anova_oneway(std::span<const std::vector<double>> groups) {
    if (groups.size() < 2) throw PreconditionError("anova: need at least 2 groups, got " + std::to_string(groups.size()));
    std::size_t total = 0;
    double grand_sum = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        if (groups[g].size() < 2) {
            throw PreconditionError("anova: group " + std::to_string(g) + " has fewer than 2 values");
        }
        for (double v : groups[g]) {
            if (!std::isfinite(v)) throw PreconditionError("anova: values must be finite");
            grand_sum += v;
        }
        total += groups[g].size();
    }
    const double grand_mean = grand_sum / static_cast<double>(total);

    std::vector<double> means;
    double ss_within = 0.0;
    for (const auto& group : groups) {
        double sum = 0.0;
        for (double v : group) sum += v;
        const double mean = sum / static_cast<double>(group.size());
        means.push_back(mean);
        for (double v : group) ss_within += (v - mean) * (v - mean);
    }
    bool equal_means = true;
    for (double m : means) equal_means = equal_means && m == means.front();
    double ss_between = 0.0;
    if (!equal_means) {
        for (std::size_t g = 0; g < groups.size(); ++g) {
            const double diff = means[g] - grand_mean;
            ss_between += static_cast<double>(groups[g].size()) * diff * diff;
        }
    }

    AnovaResult r;
    r.df_between = groups.size() - 1;
    r.df_within = total - groups.size();
    if (ss_between == 0.0) {
        r.f_statistic = 0.0;
        r.p_value = 1.0;
        return r;
    }
    if (ss_within == 0.0) {
        r.f_statistic = std::numeric_limits<double>::infinity();
        r.p_value = 0.0;
        return r;
    }
    const double msb = ss_between / static_cast<double>(r.df_between);
    const double msw = ss_within / static_cast<double>(r.df_within);
    r.f_statistic = msb / msw;
    r.p_value = f_distribution_sf(r.f_statistic, static_cast<double>(r.df_between), static_cast<double>(r.df_within));
    return r;
}

}  // namespace leuk::eval
