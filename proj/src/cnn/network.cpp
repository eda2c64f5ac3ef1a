#include "leuk/cnn/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "leuk/cnn/layers.hpp"
#include "leuk/core/error.hpp"
#include "leuk/core/rng.hpp"
#include "leuk/simd/kernels.hpp"

namespace leuk::cnn {
namespace {

KernelShape conv1_shape(const Architecture& a) { return {a.kernel, a.kernel, 1, a.conv1}; }
KernelShape conv2_shape(const Architecture& a) { return {a.kernel, a.kernel, a.conv1, a.conv2}; }

void relu_inplace(std::span<double> v) noexcept {
    for (double& x : v) x = x > 0.0 ? x : 0.0;
}

// Activations kept for the backward pass.
struct Trace {
    Volume input;
    Volume conv1;  // post-ReLU
    PoolResult pool1;
    Volume conv2;  // post-ReLU
    PoolResult pool2;
    std::vector<double> hidden;  // post-ReLU
    std::vector<double> logits;
};

Volume image_volume(const Architecture& arch, const tensor::Matrix& image) {
    if (image.rows() != arch.side || image.cols() != arch.side) {
        throw ShapeError("forward: expected " + std::to_string(arch.side) + "x" + std::to_string(arch.side) +
                         " image, got " + std::to_string(image.rows()) + "x" + std::to_string(image.cols()));
    }
    Volume v(arch.side, arch.side, 1);
    const auto src = image.data();
    for (std::size_t i = 0; i < src.size(); ++i) {
        if (!(src[i] >= 0.0 && src[i] <= 1.0)) throw PreconditionError("forward: image values must lie in [0, 1]");
        v.data[i] = src[i];
    }
    return v;
}

std::vector<double> dense(std::span<const double> weights, std::span<const double> bias, std::span<const double> x) {
    const std::size_t out = bias.size();
    const std::size_t in = x.size();
    std::vector<double> y(out);
    for (std::size_t o = 0; o < out; ++o) y[o] = simd::dot(weights.subspan(o * in, in), x) + bias[o];
    return y;
}

Trace run_forward(const Network& net, const tensor::Matrix& image) {
    const auto& a = net.arch;
    const auto& p = net.params;
    Trace t;
    t.input = image_volume(a, image);
    t.conv1 = conv2d(t.input, conv1_shape(a), p.conv1_w, p.conv1_b, Padding::same);
    relu_inplace(t.conv1.data);
    t.pool1 = maxpool2x2(t.conv1);
    t.conv2 = conv2d(t.pool1.output, conv2_shape(a), p.conv2_w, p.conv2_b, Padding::same);
    relu_inplace(t.conv2.data);
    t.pool2 = maxpool2x2(t.conv2);
    t.hidden = dense(p.fc1_w, p.fc1_b, t.pool2.output.data);
    relu_inplace(t.hidden);
    t.logits = dense(p.fc2_w, p.fc2_b, t.hidden);
    return t;
}

double cross_entropy(std::span<const double> logits, int target) {
    const double mx = *std::max_element(logits.begin(), logits.end());
    double sum = 0.0;
    for (double z : logits) sum += std::exp(z - mx);
    return std::log(sum) + mx - logits[static_cast<std::size_t>(target)];
}

void check_target(const Network& net, int target) {
    if (target < 0 || static_cast<std::size_t>(target) >= net.arch.classes) {
        throw PreconditionError("target class " + std::to_string(target) + " out of range");
    }
}

void require_same_shape(const Parameters& a, const Parameters& b) {
    const auto ta = a.tensors();
    const auto tb = b.tensors();
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (ta[i]->size() != tb[i]->size()) throw ShapeError("gradient buffer does not match network parameters");
    }
}

}  // namespace

void Architecture::validate() const {
    if (side == 0 || side % 4 != 0) throw ShapeError("architecture: side must be a positive multiple of 4");
    if (kernel == 0 || kernel > side) throw ShapeError("architecture: invalid kernel size");
    if (conv1 == 0 || conv2 == 0 || hidden == 0 || classes < 2) {
        throw ShapeError("architecture: layer widths must be positive and classes ≥ 2");
    }
    if (flatten_size() != (side / 4) * (side / 4) * conv2) throw ShapeError("architecture: flatten size mismatch");
}

Parameters Parameters::zeros_like(const Architecture& a) {
    Parameters p;
    p.conv1_w.assign(conv1_shape(a).size(), 0.0);
    p.conv1_b.assign(a.conv1, 0.0);
    p.conv2_w.assign(conv2_shape(a).size(), 0.0);
    p.conv2_b.assign(a.conv2, 0.0);
    p.fc1_w.assign(a.hidden * a.flatten_size(), 0.0);
    p.fc1_b.assign(a.hidden, 0.0);
    p.fc2_w.assign(a.classes * a.hidden, 0.0);
    p.fc2_b.assign(a.classes, 0.0);
    return p;
}

std::size_t Parameters::count() const noexcept {
    std::size_t n = 0;
    for (const auto* t : tensors()) n += t->size();
    return n;
}

Network init_weights(std::uint64_t seed, const Architecture& arch) {
    arch.validate();
    Network net{arch, seed, Parameters::zeros_like(arch)};
    SplitMix64 rng(seed);
    const auto fill = [&rng](std::vector<double>& w, std::size_t fan_in) {
        const double scale = std::sqrt(2.0 / static_cast<double>(fan_in));
        for (double& x : w) x = scale * rng.normal();
    };
    fill(net.params.conv1_w, arch.kernel * arch.kernel);
    fill(net.params.conv2_w, arch.kernel * arch.kernel * arch.conv1);
    fill(net.params.fc1_w, arch.flatten_size());
    fill(net.params.fc2_w, arch.hidden);
    return net;
}

ForwardOutput forward_extract(const Network& net, const tensor::Matrix& image) {
    Trace t = run_forward(net, image);
    return {std::move(t.hidden), std::move(t.logits)};
}

std::vector<double> softmax(std::span<const double> logits) {
    std::vector<double> p(logits.begin(), logits.end());
    if (p.empty()) return p;
    const double mx = *std::max_element(p.begin(), p.end());
    double sum = 0.0;
    for (double& x : p) {
        x = std::exp(x - mx);
        sum += x;
    }
    for (double& x : p) x /= sum;
    return p;
}

double loss_and_gradient(const Network& net, const tensor::Matrix& image, int target, Parameters& grad) {
    check_target(net, target);
    require_same_shape(net.params, grad);
    const auto& a = net.arch;
    const auto& p = net.params;
    const Trace t = run_forward(net, image);
    const double loss = cross_entropy(t.logits, target);

    // Output layer: dL/dz = softmax(z) − onehot(target).
    std::vector<double> dz = softmax(t.logits);
    dz[static_cast<std::size_t>(target)] -= 1.0;

    std::vector<double> dhidden(a.hidden, 0.0);
    for (std::size_t o = 0; o < a.classes; ++o) {
        simd::axpy(dz[o], t.hidden, std::span<double>(grad.fc2_w).subspan(o * a.hidden, a.hidden));
        grad.fc2_b[o] += dz[o];
        simd::axpy(dz[o], std::span<const double>(p.fc2_w).subspan(o * a.hidden, a.hidden), dhidden);
    }
    for (std::size_t j = 0; j < a.hidden; ++j) {
        if (!(t.hidden[j] > 0.0)) dhidden[j] = 0.0;
    }

    const std::size_t flat = a.flatten_size();
    const auto& flat_in = t.pool2.output.data;
    Volume dpool2(t.pool2.output.height, t.pool2.output.width, t.pool2.output.channels);
    for (std::size_t j = 0; j < a.hidden; ++j) {
        if (dhidden[j] == 0.0) continue;
        simd::axpy(dhidden[j], flat_in, std::span<double>(grad.fc1_w).subspan(j * flat, flat));
        grad.fc1_b[j] += dhidden[j];
        simd::axpy(dhidden[j], std::span<const double>(p.fc1_w).subspan(j * flat, flat), dpool2.data);
    }

    Volume dconv2 = maxpool2x2_backward(t.conv2, t.pool2, dpool2);
    for (std::size_t i = 0; i < dconv2.data.size(); ++i) {
        if (!(t.conv2.data[i] > 0.0)) dconv2.data[i] = 0.0;
    }
    Volume dpool1(t.pool1.output.height, t.pool1.output.width, t.pool1.output.channels);
    conv2d_backward(t.pool1.output, conv2_shape(a), p.conv2_w, Padding::same, dconv2, grad.conv2_w, grad.conv2_b,
                    &dpool1);

    Volume dconv1 = maxpool2x2_backward(t.conv1, t.pool1, dpool1);
    for (std::size_t i = 0; i < dconv1.data.size(); ++i) {
        if (!(t.conv1.data[i] > 0.0)) dconv1.data[i] = 0.0;
    }
    conv2d_backward(t.input, conv1_shape(a), p.conv1_w, Padding::same, dconv1, grad.conv1_w, grad.conv1_b, nullptr);
    return loss;
}

TrainResult train_sgd(Network net, std::span<const tensor::Matrix> images, std::span<const int> labels,
                      const TrainConfig& config) {
    if (images.empty()) throw PreconditionError("train_sgd: dataset is empty");
    if (images.size() != labels.size()) throw ShapeError("train_sgd: image and label counts differ");
    if (!(config.learning_rate >= 0.0) || !std::isfinite(config.learning_rate)) {
        throw PreconditionError("train_sgd: learning rate must be finite and nonnegative");
    }
    if (config.epochs < 0) throw PreconditionError("train_sgd: epochs must be nonnegative");

    SplitMix64 rng(config.seed);
    std::vector<std::size_t> order(images.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    Parameters grad = Parameters::zeros_like(net.arch);

    TrainResult result;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(std::span<std::size_t>(order));
        double total = 0.0;
        for (std::size_t idx : order) {
            for (auto* g : grad.tensors()) std::fill(g->begin(), g->end(), 0.0);
            const double loss = loss_and_gradient(net, images[idx], labels[idx], grad);
            if (!std::isfinite(loss)) {
                throw NumericError("train_sgd: non-finite loss in epoch " + std::to_string(epoch + 1));
            }
            total += loss;
            const auto params = net.params.tensors();
            const auto grads = grad.tensors();
            for (std::size_t k = 0; k < params.size(); ++k) {
                simd::axpy(-config.learning_rate, *grads[k], *params[k]);
            }
        }
        const double mean = total / static_cast<double>(images.size());
        if (!std::isfinite(mean)) throw NumericError("train_sgd: non-finite loss in epoch " + std::to_string(epoch + 1));
        result.loss_trace.push_back(mean);
    }
    result.net = std::move(net);
    return result;
}

double gradient_check(const Network& net, const tensor::Matrix& image, int target, double step) {
    Parameters analytic = Parameters::zeros_like(net.arch);
    loss_and_gradient(net, image, target, analytic);

    Network probe = net;
    double worst = 0.0;
    const auto ga = analytic.tensors();
    const auto pp = probe.params.tensors();
    for (std::size_t k = 0; k < pp.size(); ++k) {
        auto& values = *pp[k];
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double saved = values[i];
            values[i] = saved + step;
            const double plus = cross_entropy(run_forward(probe, image).logits, target);
            values[i] = saved - step;
            const double minus = cross_entropy(run_forward(probe, image).logits, target);
            values[i] = saved;
            const double numeric = (plus - minus) / (2.0 * step);
            const double a = (*ga[k])[i];
            worst = std::max(worst, std::abs(a - numeric) / std::max(1e-8, std::abs(a) + std::abs(numeric)));
        }
    }
    return worst;
}

}  // namespace leuk::cnn
