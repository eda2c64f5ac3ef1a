#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "leuk/data/dataset.hpp"
#include "leuk/data/pnm.hpp"

namespace leuk::data {

/// Two unit-covariance Gaussian classes with means ∓(separation/2)·u for a
/// seeded random unit vector u (label 0 at −, label 1 at +). Class 0 samples
/// come first.
LabeledDataset synth_features(std::uint64_t seed, std::size_t per_class, std::size_t dim, double separation);

struct SynthImages {
    std::vector<ImageU8> images;
    std::vector<int> labels;
};

/// side×side gray images of Gaussian blobs on a noisy background. Label 0
/// ("healthy") gets one or two large dim blobs; label 1 ("ALL") gets eight
/// to twelve small bright blobs. Class 0 samples come first.
SynthImages synth_images(std::uint64_t seed, std::size_t per_class, std::size_t side = 64);

/// synth_images followed by preprocess at the same side.
LabeledDataset synth_image_dataset(std::uint64_t seed, std::size_t per_class, std::size_t side = 64);

}  // namespace leuk::data
