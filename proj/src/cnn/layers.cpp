#include "leuk/cnn/layers.hpp"

#include <algorithm>
#include <string>

#include "leuk/core/error.hpp"
#include "leuk/simd/kernels.hpp"

namespace leuk::cnn {
namespace {

struct Geometry {
    std::size_t out_h;
    std::size_t out_w;
    std::ptrdiff_t pad_top;
    std::ptrdiff_t pad_left;
};

Geometry geometry(const Volume& input, const KernelShape& shape, Padding padding) {
    if (shape.in_channels != input.channels) {
        throw ShapeError("conv2d: kernel expects " + std::to_string(shape.in_channels) + " channels, input has " +
                         std::to_string(input.channels));
    }
    if (shape.kh == 0 || shape.kw == 0 || shape.out_channels == 0) throw ShapeError("conv2d: empty kernel");
    if (padding == Padding::same) {
        return {input.height, input.width, static_cast<std::ptrdiff_t>((shape.kh - 1) / 2),
                static_cast<std::ptrdiff_t>((shape.kw - 1) / 2)};
    }
    if (shape.kh > input.height || shape.kw > input.width) throw ShapeError("conv2d: kernel larger than input");
    return {input.height - shape.kh + 1, input.width - shape.kw + 1, 0, 0};
}

// Output columns [x_begin, x_end) whose input column x + offset is in range.
struct Span1 {
    std::size_t begin;
    std::size_t end;
};

inline Span1 valid_range(std::size_t out_len, std::size_t in_len, std::ptrdiff_t offset) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, -offset);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(static_cast<std::ptrdiff_t>(out_len),
                                                       static_cast<std::ptrdiff_t>(in_len) - offset);
    if (hi <= lo) return {0, 0};
    return {static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)};
}

}  // namespace

Volume conv2d(const Volume& input, const KernelShape& shape, std::span<const double> weights,
              std::span<const double> bias, Padding padding) {
    const auto g = geometry(input, shape, padding);
    if (weights.size() != shape.size()) throw ShapeError("conv2d: weight count does not match kernel shape");
    if (!bias.empty() && bias.size() != shape.out_channels) throw ShapeError("conv2d: bias length mismatch");

    Volume out(g.out_h, g.out_w, shape.out_channels);
    for (std::size_t f = 0; f < shape.out_channels; ++f) {
        if (!bias.empty()) {
            auto plane = out.plane(f);
            std::fill(plane.begin(), plane.end(), bias[f]);
        }
        for (std::size_t c = 0; c < shape.in_channels; ++c) {
            for (std::size_t ky = 0; ky < shape.kh; ++ky) {
                const std::ptrdiff_t dy = static_cast<std::ptrdiff_t>(ky) - g.pad_top;
                const auto rows = valid_range(g.out_h, input.height, dy);
                for (std::size_t kx = 0; kx < shape.kw; ++kx) {
                    const double w = weights[shape.index(ky, kx, c, f)];
                    if (w == 0.0) continue;
                    const std::ptrdiff_t dx = static_cast<std::ptrdiff_t>(kx) - g.pad_left;
                    const auto cols = valid_range(g.out_w, input.width, dx);
                    if (cols.end <= cols.begin) continue;
                    const std::size_t len = cols.end - cols.begin;
                    for (std::size_t y = rows.begin; y < rows.end; ++y) {
                        const std::size_t iy = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(y) + dy);
                        const std::size_t ix = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(cols.begin) + dx);
                        simd::axpy(w, std::span<const double>(&input.data[(c * input.height + iy) * input.width + ix], len),
                                   std::span<double>(&out.data[(f * g.out_h + y) * g.out_w + cols.begin], len));
                    }
                }
            }
        }
    }
    return out;
}

void conv2d_backward(const Volume& input, const KernelShape& shape, std::span<const double> weights,
                     Padding padding, const Volume& grad_output, std::span<double> grad_weights,
                     std::span<double> grad_bias, Volume* grad_input) {
    const auto g = geometry(input, shape, padding);
    if (grad_output.height != g.out_h || grad_output.width != g.out_w || grad_output.channels != shape.out_channels) {
        throw ShapeError("conv2d_backward: gradient shape mismatch");
    }
    if (grad_weights.size() != shape.size() || weights.size() != shape.size()) {
        throw ShapeError("conv2d_backward: weight gradient size mismatch");
    }
    if (grad_input != nullptr &&
        (grad_input->height != input.height || grad_input->width != input.width || grad_input->channels != input.channels)) {
        *grad_input = Volume(input.height, input.width, input.channels);
    }

    for (std::size_t f = 0; f < shape.out_channels; ++f) {
        if (!grad_bias.empty()) {
            double sum = 0.0;
            for (double v : grad_output.plane(f)) sum += v;
            grad_bias[f] += sum;
        }
        for (std::size_t c = 0; c < shape.in_channels; ++c) {
            for (std::size_t ky = 0; ky < shape.kh; ++ky) {
                const std::ptrdiff_t dy = static_cast<std::ptrdiff_t>(ky) - g.pad_top;
                const auto rows = valid_range(g.out_h, input.height, dy);
                for (std::size_t kx = 0; kx < shape.kw; ++kx) {
                    const std::ptrdiff_t dx = static_cast<std::ptrdiff_t>(kx) - g.pad_left;
                    const auto cols = valid_range(g.out_w, input.width, dx);
                    if (cols.end <= cols.begin) continue;
                    const std::size_t len = cols.end - cols.begin;
                    const std::size_t widx = shape.index(ky, kx, c, f);
                    const double w = weights[widx];
                    double acc = 0.0;
                    for (std::size_t y = rows.begin; y < rows.end; ++y) {
                        const std::size_t iy = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(y) + dy);
                        const std::size_t ix = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(cols.begin) + dx);
                        const std::size_t in_off = (c * input.height + iy) * input.width + ix;
                        const std::span<const double> go(&grad_output.data[(f * g.out_h + y) * g.out_w + cols.begin], len);
                        acc += simd::dot(go, std::span<const double>(&input.data[in_off], len));
                        if (grad_input != nullptr && w != 0.0) {
                            simd::axpy(w, go, std::span<double>(&grad_input->data[in_off], len));
                        }
                    }
                    grad_weights[widx] += acc;
                }
            }
        }
    }
}

PoolResult maxpool2x2(const Volume& input) {
    if (input.height % 2 != 0 || input.width % 2 != 0) {
        throw ShapeError("maxpool2x2: height and width must be even, got " + std::to_string(input.height) + "x" +
                         std::to_string(input.width));
    }
    PoolResult r{Volume(input.height / 2, input.width / 2, input.channels), {}};
    r.argmax.resize(r.output.data.size());
    std::size_t o = 0;
    for (std::size_t c = 0; c < input.channels; ++c) {
        for (std::size_t y = 0; y < r.output.height; ++y) {
            for (std::size_t x = 0; x < r.output.width; ++x, ++o) {
                const std::size_t base = (c * input.height + 2 * y) * input.width + 2 * x;
                const std::size_t candidates[4] = {base, base + 1, base + input.width, base + input.width + 1};
                std::size_t best = candidates[0];
                for (std::size_t k = 1; k < 4; ++k) {
                    if (input.data[candidates[k]] > input.data[best]) best = candidates[k];
                }
                r.output.data[o] = input.data[best];
                r.argmax[o] = best;
            }
        }
    }
    return r;
}

Volume maxpool2x2_backward(const Volume& input_shape, const PoolResult& pool, const Volume& grad_output) {
    if (grad_output.data.size() != pool.argmax.size()) throw ShapeError("maxpool2x2_backward: gradient size mismatch");
    Volume grad(input_shape.height, input_shape.width, input_shape.channels);
    for (std::size_t o = 0; o < pool.argmax.size(); ++o) grad.data[pool.argmax[o]] += grad_output.data[o];
    return grad;
}

}  // namespace leuk::cnn
