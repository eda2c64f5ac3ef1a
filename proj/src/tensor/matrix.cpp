#include "leuk/tensor/matrix.hpp"

#include <cmath>
#include <string>

#include "leuk/core/error.hpp"
#include "leuk/simd/kernels.hpp"

namespace leuk::tensor {
namespace {

void require_positive(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) {
        throw ShapeError("matrix dimensions must be positive, got " + std::to_string(rows) + "x" +
                         std::to_string(cols));
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
    require_positive(rows, cols);
    data_.assign(rows * cols, 0.0);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    require_positive(rows, cols);
    if (data_.size() != rows * cols) {
        throw ShapeError("matrix data length " + std::to_string(data_.size()) + " != " +
                         std::to_string(rows) + "*" + std::to_string(cols));
    }
    for (double v : data_) {
        if (!std::isfinite(v)) throw PreconditionError("matrix entries must be finite");
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) out(i, i) = 1.0;
    return out;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    std::vector<double> data;
    data.reserve(r * c);
    for (const auto& row : rows) {
        if (row.size() != c) throw ShapeError("ragged rows in Matrix::from_rows");
        data.insert(data.end(), row.begin(), row.end());
    }
    return Matrix(r, c, std::move(data));
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    }
    return out;
}

Matrix Matrix::columns(std::size_t first, std::size_t count) const {
    if (count == 0 || first + count > cols_) throw ShapeError("column range out of bounds");
    Matrix out(rows_, count);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < count; ++c) out(r, c) = (*this)(r, first + c);
    }
    return out;
}

double Matrix::frobenius_norm() const noexcept { return std::sqrt(simd::dot(data_, data_)); }

double Matrix::max_abs() const noexcept {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::abs(v));
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("multiply: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                         " by " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    const Matrix bt = b.transpose();
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const auto ar = a.row(i);
        for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = simd::dot(ar, bt.row(j));
    }
    return out;
}

Matrix multiply_at_b(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) throw ShapeError("multiply_at_b: row counts differ");
    Matrix out(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const auto br = b.row(k);
        for (std::size_t i = 0; i < a.cols(); ++i) simd::axpy(a(k, i), br, out.row(i));
    }
    return out;
}

Matrix subtract(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("subtract: shape mismatch");
    Matrix out = a;
    simd::axpy(-1.0, b.data(), out.data());
    return out;
}

double orthonormality_defect(const Matrix& a) {
    const Matrix gram = multiply_at_b(a, a);
    double worst = 0.0;
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        for (std::size_t j = 0; j < gram.cols(); ++j) {
            worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

double frobenius_dot(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("frobenius_dot: shape mismatch");
    return simd::dot(a.data(), b.data());
}

Matrix complete_orthonormal_columns(const Matrix& q, std::size_t target) {
    const std::size_t m = q.rows();
    if (target > m) throw ShapeError("cannot have more orthonormal columns than rows");
    if (target <= q.cols()) return q;

    // Work on columns stored contiguously.
    std::vector<std::vector<double>> basis;
    const Matrix qt = q.transpose();
    for (std::size_t j = 0; j < q.cols(); ++j) basis.emplace_back(qt.row(j).begin(), qt.row(j).end());

    std::size_t candidate = 0;
    while (basis.size() < target && candidate < m) {
        std::vector<double> v(m, 0.0);
        v[candidate++] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) simd::axpy(-simd::dot(b, v), b, v);
        }
        const double norm = std::sqrt(simd::dot(v, v));
        if (norm < 0.5) continue;
        for (double& x : v) x /= norm;
        basis.push_back(std::move(v));
    }

    Matrix out(m, target);
    for (std::size_t j = 0; j < target; ++j) {
        for (std::size_t i = 0; i < m; ++i) out(i, j) = basis[j][i];
    }
    return out;
}

}  // namespace leuk::tensor
