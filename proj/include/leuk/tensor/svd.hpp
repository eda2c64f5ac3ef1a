#pragma once

#include <vector>

#include "leuk/tensor/matrix.hpp"

namespace leuk::tensor {

/// Thin SVD a = u · diag(sigma) · vt with r = min(m, n).
struct SvdResult {
    Matrix u;                   ///< m×r, orthonormal columns
    std::vector<double> sigma;  ///< r values, nonincreasing, ≥ 0
    Matrix vt;                  ///< r×n, orthonormal rows
};

struct SvdOptions {
    int max_sweeps = 60;
};

/// One-sided (Hestenes) Jacobi SVD. Works for any m×n; wide inputs are
/// decomposed through their transpose.
///
/// Sign convention: in each column of u the entry of largest magnitude
/// (first index on ties) is nonnegative; vt compensates.
///
/// Throws ConvergenceError when `max_sweeps` sweeps do not converge.
SvdResult svd(const Matrix& a, const SvdOptions& options = {});

/// u · diag(sigma) · vt
Matrix svd_reconstruct(const SvdResult& s);

}  // namespace leuk::tensor
