#pragma once

#include <cstddef>

#include "leuk/data/pnm.hpp"
#include "leuk/tensor/matrix.hpp"

namespace leuk::data {

/// Luma gray conversion round(0.299 R + 0.587 G + 0.114 B); gray images
/// pass through.
ImageU8 to_gray(const ImageU8& image);

/// Bilinear resize of a gray image with half-pixel centers and edge clamping;
/// values stay on the 0..255 scale.
tensor::Matrix resize_bilinear(const ImageU8& gray, std::size_t out_height, std::size_t out_width);

/// to_gray → resize to side×side → divide by 255. Output lies in [0, 1].
tensor::Matrix preprocess(const ImageU8& image, std::size_t side);

}  // namespace leuk::data
