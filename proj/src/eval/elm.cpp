#include "leuk/eval/elm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "leuk/core/error.hpp"
#include "leuk/core/rng.hpp"
#include "leuk/simd/kernels.hpp"
#include "leuk/tensor/svd.hpp"

namespace leuk::eval {
namespace {

constexpr double kPinvCutoff = 1e-12;

std::vector<double> hidden_layer(const ElmModel& m, std::span<const double> x) {
    std::vector<double> z(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) z[j] = (x[j] - m.mean[j]) / m.scale[j];
    std::vector<double> h(m.hidden_bias.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double a = simd::dot(m.input_weights.row(i), z) + m.hidden_bias[i];
        h[i] = 1.0 / (1.0 + std::exp(-a));
    }
    return h;
}

}  // namespace

ElmModel elm_train(std::span<const std::vector<double>> train, std::span<const int> labels, std::size_t hidden_size,
                   std::uint64_t seed) {
    if (hidden_size == 0) throw PreconditionError("elm: hidden size must be at least 1");
    if (train.empty()) throw PreconditionError("elm: empty training set");
    if (labels.size() != train.size()) throw ShapeError("elm: label count differs from training set size");
    const std::size_t n = train.size();
    const std::size_t d = train.front().size();
    if (d == 0) throw ShapeError("elm: zero-length feature vectors");
    for (const auto& x : train) {
        if (x.size() != d) throw ShapeError("elm: feature vectors differ in length");
    }

    ElmModel m;
    m.mean.assign(d, 0.0);
    m.scale.assign(d, 0.0);
    for (const auto& x : train) {
        for (std::size_t j = 0; j < d; ++j) m.mean[j] += x[j];
    }
    for (double& v : m.mean) v /= static_cast<double>(n);
    for (const auto& x : train) {
        for (std::size_t j = 0; j < d; ++j) m.scale[j] += (x[j] - m.mean[j]) * (x[j] - m.mean[j]);
    }
    for (double& v : m.scale) {
        v = std::sqrt(v / static_cast<double>(n));
        if (!(v > 0.0)) v = 1.0;  // constant feature
    }

    SplitMix64 rng(seed);
    m.input_weights = tensor::Matrix(hidden_size, d);
    const double w_scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (double& w : m.input_weights.data()) w = w_scale * rng.normal();
    m.hidden_bias.resize(hidden_size);
    for (double& b : m.hidden_bias) b = rng.normal();

    m.classes.assign(labels.begin(), labels.end());
    std::sort(m.classes.begin(), m.classes.end());
    m.classes.erase(std::unique(m.classes.begin(), m.classes.end()), m.classes.end());

    tensor::Matrix h(n, hidden_size);
    tensor::Matrix t(n, m.classes.size());
    for (std::size_t i = 0; i < n; ++i) {
        const auto row = hidden_layer(m, train[i]);
        std::copy(row.begin(), row.end(), h.row(i).begin());
        const auto c = std::lower_bound(m.classes.begin(), m.classes.end(), labels[i]) - m.classes.begin();
        t(i, static_cast<std::size_t>(c)) = 1.0;
    }
    if (h.max_abs() == 0.0) throw NumericError("elm: hidden layer output is identically zero");

    // β = V Σ⁺ Uᵀ T
    const auto s = tensor::svd(h);
    const double cutoff = kPinvCutoff * s.sigma.front();
    tensor::Matrix ut_t = tensor::multiply_at_b(s.u, t);  // r × classes
    for (std::size_t k = 0; k < s.sigma.size(); ++k) {
        const double inv = s.sigma[k] > cutoff ? 1.0 / s.sigma[k] : 0.0;
        for (double& x : ut_t.row(k)) x *= inv;
    }
    m.output_weights = tensor::multiply_at_b(s.vt, ut_t);
    return m;
}

int elm_classify(const ElmModel& model, std::span<const double> sample) {
    if (sample.size() != model.mean.size()) {
        throw ShapeError("elm: sample length " + std::to_string(sample.size()) + " != " +
                         std::to_string(model.mean.size()));
    }
    const auto h = hidden_layer(model, sample);
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < model.classes.size(); ++c) {
        double score = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) score += h[i] * model.output_weights(i, c);
        if (score > best_score) {
            best_score = score;
            best = c;
        }
    }
    return model.classes[best];
}

}  // namespace leuk::eval
