#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace leuk::tensor {

/// Dense row-major matrix of doubles. A default-constructed Matrix is the
/// empty 0x0 placeholder; every other constructor requires positive
/// dimensions and finite entries.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return data_.size(); }
    bool empty() const noexcept { return data_.empty(); }

    double& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }

    std::span<double> row(std::size_t r) noexcept { return {data_.data() + r * cols_, cols_}; }
    std::span<const double> row(std::size_t r) const noexcept { return {data_.data() + r * cols_, cols_}; }

    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

    Matrix transpose() const;
    /// Columns [first, first + count) as a new matrix.
    Matrix columns(std::size_t first, std::size_t count) const;

    double frobenius_norm() const noexcept;
    double max_abs() const noexcept;

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
/// aᵀ·b without materializing the transpose of a.
Matrix multiply_at_b(const Matrix& a, const Matrix& b);
Matrix subtract(const Matrix& a, const Matrix& b);

/// max |aᵀa − I| over all entries.
double orthonormality_defect(const Matrix& a);

/// Frobenius inner product.
double frobenius_dot(const Matrix& a, const Matrix& b);

/// Extends orthonormal columns to `target` columns (target ≤ rows) using
/// Gram–Schmidt against the standard basis. Existing columns are unchanged.
Matrix complete_orthonormal_columns(const Matrix& q, std::size_t target);

}  // namespace leuk::tensor
