#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace leuk::cnn {

/// H×W×C activation volume. Stored channel-planar: element (y, x, c) is at
/// (c * H + y) * W + x.
struct Volume {
    std::size_t height = 0;
    std::size_t width = 0;
    std::size_t channels = 0;
    std::vector<double> data;

    Volume() = default;
    Volume(std::size_t h, std::size_t w, std::size_t c) : height(h), width(w), channels(c), data(h * w * c, 0.0) {}

    double& at(std::size_t y, std::size_t x, std::size_t c) noexcept { return data[(c * height + y) * width + x]; }
    double at(std::size_t y, std::size_t x, std::size_t c) const noexcept { return data[(c * height + y) * width + x]; }

    std::span<double> plane(std::size_t c) noexcept { return {data.data() + c * height * width, height * width}; }
    std::span<const double> plane(std::size_t c) const noexcept {
        return {data.data() + c * height * width, height * width};
    }
};

/// kh×kw×C×F filter bank. Weight (ky, kx, c, f) is stored at
/// ((f * C + c) * kh + ky) * kw + kx.
struct KernelShape {
    std::size_t kh = 0;
    std::size_t kw = 0;
    std::size_t in_channels = 0;
    std::size_t out_channels = 0;

    std::size_t size() const noexcept { return kh * kw * in_channels * out_channels; }
    std::size_t index(std::size_t ky, std::size_t kx, std::size_t c, std::size_t f) const noexcept {
        return ((f * in_channels + c) * kh + ky) * kw + kx;
    }
};

enum class Padding { same, valid };

/// Stride-1 cross-correlation. Same padding pads with zeros, with the extra
/// row/column on the bottom/right for even kernels. `bias` may be empty.
Volume conv2d(const Volume& input, const KernelShape& shape, std::span<const double> weights,
              std::span<const double> bias, Padding padding);

/// Given dL/d(output), accumulates dL/dweights and dL/dbias and, when
/// `grad_input` is non-null, dL/d(input).
void conv2d_backward(const Volume& input, const KernelShape& shape, std::span<const double> weights,
                     Padding padding, const Volume& grad_output, std::span<double> grad_weights,
                     std::span<double> grad_bias, Volume* grad_input);

struct PoolResult {
    Volume output;
    /// Per output element, the flat index into `input.data` of the selected max.
    std::vector<std::size_t> argmax;
};

/// Non-overlapping 2×2 max pooling; ties go to the first position in
/// row-major window order. Throws ShapeError for odd height or width.
PoolResult maxpool2x2(const Volume& input);

/// Routes gradients back to the recorded argmax positions.
Volume maxpool2x2_backward(const Volume& input_shape, const PoolResult& pool, const Volume& grad_output);

}  // namespace leuk::cnn
