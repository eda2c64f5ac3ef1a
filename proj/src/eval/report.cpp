#include "leuk/eval/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "json.hpp"

#include "leuk/core/error.hpp"

namespace leuk::eval {
namespace {

std::string format(const char* fmt, double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, value);
    return buf;
}

std::string pad_right(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string pad_left(std::string s, std::size_t width) {
    if (s.size() < width) s.insert(0, width - s.size(), ' ');
    return s;
}

}  // namespace

std::optional<AnovaResult> anova_of(const std::vector<EvalReport>& reports) {
    if (reports.size() < 2) return std::nullopt;
    std::vector<std::vector<double>> groups;
    for (const auto& r : reports) {
        if (r.fold_accuracies.size() < 2) return std::nullopt;
        groups.push_back(r.fold_accuracies);
    }
    return anova_oneway(groups);
}

std::string anova_footer(const std::optional<AnovaResult>& anova) {
    if (!anova) return "ANOVA: n/a (needs two or more classifiers with two or more folds)";
    const std::string f = std::isinf(anova->f_statistic) ? "inf" : format("%.2f", anova->f_statistic);
    return "ANOVA: F(" + std::to_string(anova->df_between) + "," + std::to_string(anova->df_within) + ")=" + f +
           ", p=" + format("%.4f", anova->p_value);
}

std::string compare_report(const std::vector<EvalReport>& reports, const std::optional<AnovaResult>& anova) {
    if (reports.empty()) throw PreconditionError("compare_report: no reports");
    std::vector<std::size_t> order(reports.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return reports[a].mean > reports[b].mean; });

    std::size_t name_w = std::string("Classifier").size();
    for (const auto& r : reports) name_w = std::max(name_w, r.classifier.size());
    const std::string header = pad_right("Classifier", name_w) + " | Mean Acc (%) |   Std  | Folds";
    std::string out = header + "\n" + std::string(header.size(), '-') + "\n";
    for (std::size_t i : order) {
        const auto& r = reports[i];
        out += pad_right(r.classifier, name_w) + " | " + pad_left(format("%.2f", 100.0 * r.mean), 12) + " | " +
               pad_left(format("%.4f", r.std), 6) + " | " + pad_left(std::to_string(r.fold_accuracies.size()), 5) +
               "\n";
    }
    out += anova_footer(anova) + "\n";
    return out;
}

std::string report_json(const std::vector<EvalReport>& reports, const std::optional<AnovaResult>& anova) {
    using nlohmann::ordered_json;
    ordered_json doc;
    doc["reports"] = ordered_json::array();
    for (const auto& r : reports) {
        ordered_json j;
        j["classifier"] = r.classifier;
        j["fold_accuracies"] = r.fold_accuracies;
        j["mean"] = r.mean;
        j["std"] = r.std;
        j["confusion"] = {{r.confusion[0][0], r.confusion[0][1]}, {r.confusion[1][0], r.confusion[1][1]}};
        j["seed"] = r.seed;
        j["folds"] = r.folds;
        j["repeats"] = r.repeats;
        doc["reports"].push_back(std::move(j));
    }
    if (anova) {
        ordered_json a;
        if (std::isinf(anova->f_statistic)) {
            a["f"] = "inf";
        } else {
            a["f"] = anova->f_statistic;
        }
        a["dfb"] = anova->df_between;
        a["dfw"] = anova->df_within;
        a["p"] = anova->p_value;
        doc["anova"] = std::move(a);
    } else {
        doc["anova"] = nullptr;
    }
    return doc.dump(2) + "\n";
}

}  // namespace leuk::eval
