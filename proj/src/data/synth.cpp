#include "leuk/data/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "leuk/core/error.hpp"
#include "leuk/core/rng.hpp"
#include "leuk/data/preprocess.hpp"

namespace leuk::data {
namespace {

struct BlobStyle {
    std::size_t min_count;
    std::size_t max_count;
    double min_radius;
    double max_radius;
    double min_amp;
    double max_amp;
};

constexpr BlobStyle kHealthyStyle{1, 2, 7.0, 10.0, 90.0, 130.0};
constexpr BlobStyle kAllStyle{8, 12, 2.5, 3.5, 170.0, 215.0};
constexpr double kBackground = 40.0;
constexpr double kNoiseSigma = 8.0;

ImageU8 draw(SplitMix64& rng, std::size_t side, const BlobStyle& style) {
    const auto s = static_cast<double>(side);
    std::vector<double> canvas(side * side, kBackground);
    const std::size_t count = style.min_count + rng.below(style.max_count - style.min_count + 1);
    for (std::size_t b = 0; b < count; ++b) {
        const double cx = rng.uniform(0.15 * s, 0.85 * s);
        const double cy = rng.uniform(0.15 * s, 0.85 * s);
        const double radius = rng.uniform(style.min_radius, style.max_radius) * s / 64.0;
        const double amp = rng.uniform(style.min_amp, style.max_amp);
        const double inv = 1.0 / (2.0 * radius * radius);
        for (std::size_t y = 0; y < side; ++y) {
            for (std::size_t x = 0; x < side; ++x) {
                const double dx = static_cast<double>(x) + 0.5 - cx;
                const double dy = static_cast<double>(y) + 0.5 - cy;
                canvas[y * side + x] += amp * std::exp(-(dx * dx + dy * dy) * inv);
            }
        }
    }
    ImageU8 img{side, side, 1, std::vector<std::uint8_t>(side * side)};
    for (std::size_t i = 0; i < canvas.size(); ++i) {
        const double v = canvas[i] + kNoiseSigma * rng.normal();
        img.pixels[i] = static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
    }
    return img;
}

}  // namespace

LabeledDataset synth_features(std::uint64_t seed, std::size_t per_class, std::size_t dim, double separation) {
    if (per_class < 1) throw PreconditionError("synth: per_class must be at least 1");
    if (dim < 1) throw PreconditionError("synth: dimension must be at least 1");
    SplitMix64 rng(seed);
    std::vector<double> u(dim);
    double norm = 0.0;
    while (!(norm > 0.0)) {
        for (double& x : u) x = rng.normal();
        norm = std::sqrt(std::inner_product(u.begin(), u.end(), u.begin(), 0.0));
    }
    for (double& x : u) x /= norm;

    LabeledDataset ds;
    ds.kind = DatasetKind::feature_vectors;
    for (int label = 0; label < 2; ++label) {
        const double shift = (label == 0 ? -0.5 : 0.5) * separation;
        for (std::size_t n = 0; n < per_class; ++n) {
            std::vector<double> v(dim);
            for (std::size_t i = 0; i < dim; ++i) v[i] = shift * u[i] + rng.normal();
            ds.vectors.push_back(std::move(v));
            ds.labels.push_back(label);
            ds.sources.push_back("synth-" + std::to_string(label) + "-" + std::to_string(n));
        }
    }
    return ds;
}

SynthImages synth_images(std::uint64_t seed, std::size_t per_class, std::size_t side) {
    if (per_class < 1) throw PreconditionError("synth: per_class must be at least 1");
    if (side < 4) throw PreconditionError("synth: side must be at least 4");
    SplitMix64 rng(seed);
    SynthImages out;
    for (int label = 0; label < 2; ++label) {
        for (std::size_t n = 0; n < per_class; ++n) {
            out.images.push_back(draw(rng, side, label == 0 ? kHealthyStyle : kAllStyle));
            out.labels.push_back(label);
        }
    }
    return out;
}

LabeledDataset synth_image_dataset(std::uint64_t seed, std::size_t per_class, std::size_t side) {
    auto raw = synth_images(seed, per_class, side);
    LabeledDataset ds;
    ds.kind = DatasetKind::images;
    for (std::size_t i = 0; i < raw.images.size(); ++i) {
        ds.images.push_back(preprocess(raw.images[i], side));
        ds.labels.push_back(raw.labels[i]);
        ds.sources.push_back("synth-" + std::to_string(raw.labels[i]) + "-" + std::to_string(i));
    }
    return ds;
}

}  // namespace leuk::data
