#include "leuk/eval/knn.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "leuk/core/error.hpp"
#include "leuk/simd/kernels.hpp"

namespace leuk::eval {

int knn_classify(std::span<const std::vector<double>> train, std::span<const int> labels,
                 std::span<const double> sample, std::size_t k) {
    if (train.empty()) throw PreconditionError("knn: empty training set");
    if (labels.size() != train.size()) throw ShapeError("knn: label count differs from training set size");
    if (k < 1 || k > train.size()) {
        throw PreconditionError("knn: k = " + std::to_string(k) + " outside [1, " + std::to_string(train.size()) + "]");
    }
    std::vector<double> dist(train.size());
    for (std::size_t i = 0; i < train.size(); ++i) {
        if (train[i].size() != sample.size()) throw ShapeError("knn: sample dimension differs from training data");
        dist[i] = simd::squared_distance(train[i], sample);
    }
    std::vector<std::size_t> order(train.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::size_t a, std::size_t b) { return dist[a] < dist[b] || (dist[a] == dist[b] && a < b); });

    std::map<int, std::size_t> votes;
    for (std::size_t i = 0; i < k; ++i) ++votes[labels[order[i]]];
    int best = votes.begin()->first;
    std::size_t best_count = 0;
    for (const auto& [label, count] : votes) {
        if (count > best_count) {
            best = label;
            best_count = count;
        }
    }
    return best;
}

}  // namespace leuk::eval
