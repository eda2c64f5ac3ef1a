#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "leuk/tensor/matrix.hpp"

namespace leuk::eval {

/// Single-hidden-layer extreme learning machine.
struct ElmModel {
    std::vector<double> mean;   ///< per-feature standardization
    std::vector<double> scale;
    tensor::Matrix input_weights;  ///< hidden × d
    std::vector<double> hidden_bias;
    tensor::Matrix output_weights;  ///< hidden × classes
    std::vector<int> classes;       ///< ascending labels, one output column each

    friend bool operator==(const ElmModel&, const ElmModel&) = default;
};

/// Inputs are standardized per feature, then mapped through sigmoid(W x + b)
/// with W ~ N(0, 1/d) and b ~ N(0, 1) from SplitMix64(seed). Output weights
/// are the least-squares fit to one-hot targets via the SVD pseudoinverse,
/// singular values below 1e-12·σ₁ treated as zero.
/// Throws PreconditionError for hidden_size 0 or empty data, NumericError for
/// an all-zero hidden map.
ElmModel elm_train(std::span<const std::vector<double>> train, std::span<const int> labels, std::size_t hidden_size,
                   std::uint64_t seed);

/// Argmax of the output layer; ties go to the lower label.
int elm_classify(const ElmModel& model, std::span<const double> sample);

}  // namespace leuk::eval
