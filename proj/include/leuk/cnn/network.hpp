#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "leuk/tensor/matrix.hpp"

namespace leuk::cnn {

/// conv k×k×conv1 (same) → ReLU → pool → conv k×k×conv2 (same) → ReLU →
/// pool → flatten → dense hidden → ReLU → dense classes. The defaults are
/// the production descriptor (64×64 input, 4096-wide flatten); tests use
/// reduced ones.
struct Architecture {
    std::size_t side = 64;
    std::size_t kernel = 3;
    std::size_t conv1 = 8;
    std::size_t conv2 = 16;
    std::size_t hidden = 128;
    std::size_t classes = 2;

    std::size_t flatten_size() const noexcept { return (side / 4) * (side / 4) * conv2; }
    /// Throws ShapeError for an inconsistent descriptor.
    void validate() const;

    friend bool operator==(const Architecture&, const Architecture&) = default;
};

struct Parameters {
    std::vector<double> conv1_w, conv1_b;
    std::vector<double> conv2_w, conv2_b;
    std::vector<double> fc1_w, fc1_b;  // fc1_w: hidden × flatten, row-major
    std::vector<double> fc2_w, fc2_b;  // fc2_w: classes × hidden, row-major

    static Parameters zeros_like(const Architecture& arch);

    std::array<std::vector<double>*, 8> tensors() noexcept {
        return {&conv1_w, &conv1_b, &conv2_w, &conv2_b, &fc1_w, &fc1_b, &fc2_w, &fc2_b};
    }
    std::array<const std::vector<double>*, 8> tensors() const noexcept {
        return {&conv1_w, &conv1_b, &conv2_w, &conv2_b, &fc1_w, &fc1_b, &fc2_w, &fc2_b};
    }
    std::size_t count() const noexcept;

    friend bool operator==(const Parameters&, const Parameters&) = default;
};

struct Network {
    Architecture arch;
    std::uint64_t seed = 0;
    Parameters params;

    friend bool operator==(const Network&, const Network&) = default;
};

struct ForwardOutput {
    std::vector<double> features;  ///< post-ReLU hidden activations
    std::vector<double> logits;
};

/// He initialization: weights ~ N(0, 2 / fan_in) drawn in layer order from
/// SplitMix64(seed); biases zero.
Network init_weights(std::uint64_t seed, const Architecture& arch = {});

/// Requires a side×side image with values in [0, 1].
ForwardOutput forward_extract(const Network& net, const tensor::Matrix& image);

std::vector<double> softmax(std::span<const double> logits);

/// Softmax cross-entropy of one sample; accumulates its gradient into `grad`
/// (which must match the network's parameter shapes). Returns the loss.
double loss_and_gradient(const Network& net, const tensor::Matrix& image, int target, Parameters& grad);

struct TrainConfig {
    int epochs = 5;
    double learning_rate = 0.03;
    std::uint64_t seed = 42;
};

struct TrainResult {
    Network net;
    std::vector<double> loss_trace;  ///< mean loss per epoch
};

/// Per-sample SGD over a seeded shuffle of the data each epoch.
/// Throws NumericError naming the epoch if the loss becomes non-finite.
TrainResult train_sgd(Network net, std::span<const tensor::Matrix> images, std::span<const int> labels,
                      const TrainConfig& config);

/// Max over parameters of |g_analytic − g_numeric| / max(1e-8, |g_analytic| + |g_numeric|)
/// with central differences of step `step`.
double gradient_check(const Network& net, const tensor::Matrix& image, int target, double step = 1e-5);

}  // namespace leuk::cnn
