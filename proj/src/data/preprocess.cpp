#include "leuk/data/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "leuk/core/error.hpp"

namespace leuk::data {
namespace {

struct Tap {
    std::size_t lo;
    std::size_t hi;
    double frac;
};

// Source sample position for output index i under half-pixel alignment.
Tap tap(std::size_t i, std::size_t in_len, std::size_t out_len) {
    const double scale = static_cast<double>(in_len) / static_cast<double>(out_len);
    double src = (static_cast<double>(i) + 0.5) * scale - 0.5;
    src = std::clamp(src, 0.0, static_cast<double>(in_len - 1));
    const auto lo = static_cast<std::size_t>(std::floor(src));
    const std::size_t hi = std::min(lo + 1, in_len - 1);
    return {lo, hi, src - static_cast<double>(lo)};
}

}  // namespace

ImageU8 to_gray(const ImageU8& image) {
    if (image.channels == 1) return image;
    if (image.channels != 3) throw PreconditionError("to_gray: channels must be 1 or 3");
    ImageU8 gray{image.width, image.height, 1, std::vector<std::uint8_t>(image.width * image.height)};
    for (std::size_t i = 0; i < gray.pixels.size(); ++i) {
        const double y = 0.299 * image.pixels[3 * i] + 0.587 * image.pixels[3 * i + 1] + 0.114 * image.pixels[3 * i + 2];
        gray.pixels[i] = static_cast<std::uint8_t>(std::clamp(std::round(y), 0.0, 255.0));
    }
    return gray;
}

tensor::Matrix resize_bilinear(const ImageU8& gray, std::size_t out_height, std::size_t out_width) {
    if (gray.channels != 1) throw PreconditionError("resize_bilinear: expects a gray image");
    if (gray.width == 0 || gray.height == 0 || out_height == 0 || out_width == 0) {
        throw ShapeError("resize_bilinear: dimensions must be positive");
    }
    std::vector<Tap> xs(out_width);
    for (std::size_t x = 0; x < out_width; ++x) xs[x] = tap(x, gray.width, out_width);

    tensor::Matrix out(out_height, out_width);
    const auto px = [&](std::size_t y, std::size_t x) { return static_cast<double>(gray.pixels[y * gray.width + x]); };
    for (std::size_t y = 0; y < out_height; ++y) {
        const Tap ty = tap(y, gray.height, out_height);
        for (std::size_t x = 0; x < out_width; ++x) {
            const Tap& tx = xs[x];
            const double top = px(ty.lo, tx.lo) + tx.frac * (px(ty.lo, tx.hi) - px(ty.lo, tx.lo));
            const double bottom = px(ty.hi, tx.lo) + tx.frac * (px(ty.hi, tx.hi) - px(ty.hi, tx.lo));
            out(y, x) = top + ty.frac * (bottom - top);
        }
    }
    return out;
}

tensor::Matrix preprocess(const ImageU8& image, std::size_t side) {
    if (side == 0) throw PreconditionError("preprocess: side must be at least 1");
    tensor::Matrix m = resize_bilinear(to_gray(image), side, side);
    for (double& v : m.data()) v = std::clamp(v / 255.0, 0.0, 1.0);
    return m;
}

}  // namespace leuk::data
