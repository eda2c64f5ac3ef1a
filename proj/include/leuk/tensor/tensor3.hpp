#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "leuk/tensor/matrix.hpp"

namespace leuk::tensor {

using Dims3 = std::array<std::size_t, 3>;

/// Dense order-3 tensor. Storage has the mode-1 index varying fastest:
/// element (i1, i2, i3) lives at i1 + I1 * (i2 + I2 * i3). Indices are 0-based.
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(Dims3 dims);
    Tensor3(Dims3 dims, std::vector<double> data);

    const Dims3& dims() const noexcept { return dims_; }
    std::size_t dim(int mode) const noexcept { return dims_[static_cast<std::size_t>(mode - 1)]; }
    std::size_t size() const noexcept { return data_.size(); }

    double& operator()(std::size_t i1, std::size_t i2, std::size_t i3) noexcept {
        return data_[i1 + dims_[0] * (i2 + dims_[1] * i3)];
    }
    double operator()(std::size_t i1, std::size_t i2, std::size_t i3) const noexcept {
        return data_[i1 + dims_[0] * (i2 + dims_[1] * i3)];
    }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    double frobenius_norm() const noexcept;
    double max_abs() const noexcept;

    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    Dims3 dims_{0, 0, 0};
    std::vector<double> data_;
};

/// Mode-n unfolding (mode ∈ {1,2,3}). Rows are indexed by i_mode; the column
/// index combines the remaining indices in increasing mode order with the
/// earlier mode varying fastest.
Matrix unfold(const Tensor3& t, int mode);

/// Exact inverse of unfold for the given target dimensions.
Tensor3 fold(const Matrix& m, int mode, const Dims3& dims);

/// n-mode product t ×ₙ m: replaces dimension `mode` by m.rows().
Tensor3 mode_product(const Tensor3& t, const Matrix& m, int mode);

/// Frobenius inner product of mode-n slices i and j.
double slice_inner_product(const Tensor3& t, int mode, std::size_t i, std::size_t j);

}  // namespace leuk::tensor
