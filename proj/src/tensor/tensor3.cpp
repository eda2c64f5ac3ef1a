#include "leuk/tensor/tensor3.hpp"

#include <cmath>
#include <string>

#include "leuk/core/error.hpp"
#include "leuk/simd/kernels.hpp"

namespace leuk::tensor {
namespace {

void require_mode(int mode) {
    if (mode < 1 || mode > 3) throw PreconditionError("mode must be 1, 2 or 3, got " + std::to_string(mode));
}

std::size_t volume(const Dims3& d) { return d[0] * d[1] * d[2]; }

// Row/column of element (i1,i2,i3) in the mode-n unfolding.
struct UnfoldIndex {
    std::size_t row;
    std::size_t col;
};

inline UnfoldIndex unfold_index(const Dims3& d, int mode, std::size_t i1, std::size_t i2, std::size_t i3) {
    switch (mode) {
        case 1: return {i1, i2 + d[1] * i3};
        case 2: return {i2, i1 + d[0] * i3};
        default: return {i3, i1 + d[0] * i2};
    }
}

}  // namespace

Tensor3::Tensor3(Dims3 dims) : dims_(dims) {
    if (dims[0] == 0 || dims[1] == 0 || dims[2] == 0) throw ShapeError("tensor dimensions must be positive");
    data_.assign(volume(dims), 0.0);
}

Tensor3::Tensor3(Dims3 dims, std::vector<double> data) : dims_(dims), data_(std::move(data)) {
    if (dims[0] == 0 || dims[1] == 0 || dims[2] == 0) throw ShapeError("tensor dimensions must be positive");
    if (data_.size() != volume(dims)) throw ShapeError("tensor data length does not match dims");
    for (double v : data_) {
        if (!std::isfinite(v)) throw PreconditionError("tensor entries must be finite");
    }
}

double Tensor3::frobenius_norm() const noexcept { return std::sqrt(simd::dot(data_, data_)); }

double Tensor3::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Matrix unfold(const Tensor3& t, int mode) {
    require_mode(mode);
    const auto& d = t.dims();
    const std::size_t rows = d[static_cast<std::size_t>(mode - 1)];
    Matrix out(rows, volume(d) / rows);
    for (std::size_t i3 = 0; i3 < d[2]; ++i3) {
        for (std::size_t i2 = 0; i2 < d[1]; ++i2) {
            for (std::size_t i1 = 0; i1 < d[0]; ++i1) {
                const auto [r, c] = unfold_index(d, mode, i1, i2, i3);
                out(r, c) = t(i1, i2, i3);
            }
        }
    }
    return out;
}

Tensor3 fold(const Matrix& m, int mode, const Dims3& dims) {
    require_mode(mode);
    const std::size_t rows = dims[static_cast<std::size_t>(mode - 1)];
    if (rows == 0 || m.rows() != rows || m.rows() * m.cols() != volume(dims)) {
        throw ShapeError("fold: matrix " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                         " does not match dims (" + std::to_string(dims[0]) + "," + std::to_string(dims[1]) +
                         "," + std::to_string(dims[2]) + ") at mode " + std::to_string(mode));
    }
    Tensor3 out(dims);
    for (std::size_t i3 = 0; i3 < dims[2]; ++i3) {
        for (std::size_t i2 = 0; i2 < dims[1]; ++i2) {
            for (std::size_t i1 = 0; i1 < dims[0]; ++i1) {
                const auto [r, c] = unfold_index(dims, mode, i1, i2, i3);
                out(i1, i2, i3) = m(r, c);
            }
        }
    }
    return out;
}

Tensor3 mode_product(const Tensor3& t, const Matrix& m, int mode) {
    require_mode(mode);
    const auto idx = static_cast<std::size_t>(mode - 1);
    if (m.cols() != t.dims()[idx]) {
        throw ShapeError("mode_product: matrix has " + std::to_string(m.cols()) + " columns, mode " +
                         std::to_string(mode) + " has size " + std::to_string(t.dims()[idx]));
    }
    Dims3 out_dims = t.dims();
    out_dims[idx] = m.rows();
    return fold(multiply(m, unfold(t, mode)), mode, out_dims);
}

double slice_inner_product(const Tensor3& t, int mode, std::size_t i, std::size_t j) {
    require_mode(mode);
    const Matrix u = unfold(t, mode);
    if (i >= u.rows() || j >= u.rows()) throw ShapeError("slice index out of range");
    return simd::dot(u.row(i), u.row(j));
}

}  // namespace leuk::tensor
