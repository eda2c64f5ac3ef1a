#include "leuk/tensor/svd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <span>
#include <string>

#include "leuk/core/error.hpp"
#include "leuk/simd/kernels.hpp"

namespace leuk::tensor {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Columns of a tall matrix stored contiguously so the rotation kernels run
// over unit-stride memory.
class ColumnStore {
public:
    ColumnStore(std::size_t length, std::size_t count) : length_(length), data_(length * count, 0.0) {}

    static ColumnStore from_matrix(const Matrix& a) {
        ColumnStore out(a.rows(), a.cols());
        for (std::size_t r = 0; r < a.rows(); ++r) {
            for (std::size_t c = 0; c < a.cols(); ++c) out.data_[c * out.length_ + r] = a(r, c);
        }
        return out;
    }

    std::span<double> col(std::size_t j) noexcept { return {data_.data() + j * length_, length_}; }
    std::span<const double> col(std::size_t j) const noexcept { return {data_.data() + j * length_, length_}; }

private:
    std::size_t length_;
    std::vector<double> data_;
};

// Orthonormalizes `v` against the first `count` columns of `basis` (two
// passes of modified Gram–Schmidt). Returns the norm before normalization.
double orthonormalize_against(std::span<double> v, const ColumnStore& basis, std::size_t count) {
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 0; j < count; ++j) {
            const auto b = basis.col(j);
            simd::axpy(-simd::dot(b, v), b, v);
        }
    }
    const double norm = std::sqrt(simd::dot(v, v));
    if (norm > 0.0) {
        for (double& x : v) x /= norm;
    }
    return norm;
}

// Thin SVD of a tall matrix (m ≥ n) without the sign convention.
SvdResult svd_tall(const Matrix& a, const SvdOptions& options) {
    const std::size_t m = a.rows();
    const std::size_t n = a.cols();

    ColumnStore work = ColumnStore::from_matrix(a);
    ColumnStore v = ColumnStore::from_matrix(Matrix::identity(n));

    const double norm_a = a.frobenius_norm();
    const double tol = std::max(1.0, static_cast<double>(m)) * kEps;
    // Columns below this squared norm are exact or underflowed zeros.
    const double floor_sq = std::pow(1e-150 * std::max(norm_a, 1e-150), 2);

    bool converged = n == 1;
    for (int sweep = 0; sweep < options.max_sweeps && !converged; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const simd::Gram2 g = simd::gram2(work.col(p), work.col(q));
                if (g.aa <= floor_sq || g.bb <= floor_sq) continue;
                if (std::abs(g.ab) <= tol * std::sqrt(g.aa) * std::sqrt(g.bb)) continue;

                const double zeta = (g.bb - g.aa) / (2.0 * g.ab);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::hypot(1.0, zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                simd::rotate(work.col(p), work.col(q), c, s);
                simd::rotate(v.col(p), v.col(q), c, s);
                rotated = true;
            }
        }
        converged = !rotated;
    }
    if (!converged) {
        throw ConvergenceError("svd: Jacobi iteration did not converge in " +
                               std::to_string(options.max_sweeps) + " sweeps");
    }

    std::vector<double> norms(n);
    for (std::size_t j = 0; j < n; ++j) norms[j] = std::sqrt(simd::dot(work.col(j), work.col(j)));

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] > norms[y]; });

    // Left vectors: normalized columns, re-orthogonalized in decreasing
    // singular value order. Zero (or numerically lost) directions are
    // replaced by completions from the standard basis; their singular values
    // are at rounding level so the product is unaffected.
    ColumnStore u(m, n);
    std::size_t candidate = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        auto uk = u.col(k);
        double kept = 0.0;
        if (norms[j] > 0.0) {
            const auto src = work.col(j);
            for (std::size_t i = 0; i < m; ++i) uk[i] = src[i] / norms[j];
            kept = orthonormalize_against(uk, u, k);
        }
        while (kept < 0.5) {
            if (candidate >= m) throw ConvergenceError("svd: could not complete an orthonormal basis");
            std::fill(uk.begin(), uk.end(), 0.0);
            uk[candidate++] = 1.0;
            kept = orthonormalize_against(uk, u, k);
        }
    }

    SvdResult out{Matrix(m, n), std::vector<double>(n), Matrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t j = order[k];
        out.sigma[k] = norms[j];
        const auto uk = u.col(k);
        const auto vj = v.col(j);
        for (std::size_t i = 0; i < m; ++i) out.u(i, k) = uk[i];
        for (std::size_t i = 0; i < n; ++i) out.vt(k, i) = vj[i];
    }
    return out;
}

void apply_sign_convention(SvdResult& s) {
    for (std::size_t k = 0; k < s.u.cols(); ++k) {
        std::size_t best = 0;
        double best_abs = -1.0;
        for (std::size_t i = 0; i < s.u.rows(); ++i) {
            const double x = std::abs(s.u(i, k));
            if (x > best_abs) {
                best_abs = x;
                best = i;
            }
        }
        if (s.u(best, k) < 0.0) {
            for (std::size_t i = 0; i < s.u.rows(); ++i) s.u(i, k) = -s.u(i, k);
            for (double& x : s.vt.row(k)) x = -x;
        }
    }
}

}  // namespace

SvdResult svd(const Matrix& a, const SvdOptions& options) {
    if (a.empty()) throw PreconditionError("svd: matrix is empty");
    for (double x : a.data()) {
        if (!std::isfinite(x)) throw PreconditionError("svd: matrix has non-finite entries");
    }

    SvdResult out;
    if (a.rows() >= a.cols()) {
        out = svd_tall(a, options);
    } else {
        // a = (aᵀ)ᵀ = (U Σ Vᵀ)ᵀ = V Σ Uᵀ
        SvdResult t = svd_tall(a.transpose(), options);
        out.u = t.vt.transpose();
        out.sigma = std::move(t.sigma);
        out.vt = t.u.transpose();
    }
    apply_sign_convention(out);
    return out;
}

Matrix svd_reconstruct(const SvdResult& s) {
    Matrix scaled = s.u;
    for (std::size_t i = 0; i < scaled.rows(); ++i) {
        for (std::size_t k = 0; k < scaled.cols(); ++k) scaled(i, k) *= s.sigma[k];
    }
    return multiply(scaled, s.vt);
}

}  // namespace leuk::tensor
