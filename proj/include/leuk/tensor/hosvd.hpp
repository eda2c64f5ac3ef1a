#pragma once

#include <array>
#include <vector>

#include "leuk/tensor/matrix.hpp"
#include "leuk/tensor/svd.hpp"
#include "leuk/tensor/tensor3.hpp"

namespace leuk::tensor {

using Ranks3 = std::array<std::size_t, 3>;

/// Truncated higher-order SVD: t ≈ core ×₁ U1 ×₂ U2 ×₃ U3.
struct HosvdDecomposition {
    Tensor3 core;                                           ///< k1×k2×k3
    std::array<Matrix, 3> factors;                          ///< Iₙ×kₙ, orthonormal columns
    std::array<std::vector<double>, 3> mode_singular_values;  ///< full spectrum of each unfolding
};

/// Factor n holds the first kₙ left singular vectors of unfold(t, n); when
/// kₙ exceeds the rank of that unfolding the basis is completed with
/// orthonormal directions (the matching core slices are zero).
///
/// Requires 1 ≤ kₙ ≤ Iₙ. Propagates ConvergenceError from svd.
HosvdDecomposition hosvd(const Tensor3& t, const Ranks3& ranks, const SvdOptions& options = {});

/// core ×₁ U1 ×₂ U2 ×₃ U3
Tensor3 reconstruct(const HosvdDecomposition& d);

/// sqrt(Σₙ Σ_{i ≥ kₙ} σᵢ⁽ⁿ⁾²) (0-based i), an upper bound on the Frobenius
/// error of the truncated reconstruction. Ranks beyond a list's length
/// discard nothing.
double truncation_error_bound(const std::array<std::vector<double>, 3>& mode_singular_values,
                              const Ranks3& ranks);

}  // namespace leuk::tensor
