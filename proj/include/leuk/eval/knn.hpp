#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace leuk::eval {

/// k-nearest-neighbour vote under Euclidean distance. Equal distances keep
/// the lower training index; equal vote counts go to the lower label.
/// Throws PreconditionError for an empty training set or k outside [1, N].
int knn_classify(std::span<const std::vector<double>> train, std::span<const int> labels,
                 std::span<const double> sample, std::size_t k);

}  // namespace leuk::eval
