#include <gtest/gtest.h>

#include <cmath>

#include "leuk/core/error.hpp"
#include "leuk/tensor/hosvd.hpp"
#include "support.hpp"

using namespace leuk;
using namespace leuk::tensor;

namespace {

Tensor3 difference(const Tensor3& a, const Tensor3& b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = a.data()[i] - b.data()[i];
    return Tensor3(a.dims(), std::move(d));
}

TEST(Hosvd, FullRankReconstructsExactly) {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
        const Dims3 dims{1 + rng.below(8), 1 + rng.below(9), 1 + rng.below(7)};
        const Tensor3 t = test::random_tensor(rng, dims);
        const auto d = hosvd(t, dims);
        EXPECT_LE(difference(reconstruct(d), t).frobenius_norm(), 1e-10 * t.frobenius_norm());
    }
}

TEST(Hosvd, FactorsOrthonormalAndCoreAllOrthogonal) {
    SplitMix64 rng(32);
    for (int trial = 0; trial < 60; ++trial) {
        const Dims3 dims{2 + rng.below(6), 2 + rng.below(6), 2 + rng.below(6)};
        const auto d = hosvd(test::random_tensor(rng, dims), dims);
        const double core_sq = std::pow(d.core.frobenius_norm(), 2);
        for (int mode = 1; mode <= 3; ++mode) {
            const auto& sv = d.mode_singular_values[static_cast<std::size_t>(mode - 1)];
            EXPECT_LE(orthonormality_defect(d.factors[static_cast<std::size_t>(mode - 1)]),
                      1e-10 * std::max(1.0, sv.front()));
            const std::size_t n = d.core.dim(mode);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    EXPECT_LE(std::abs(slice_inner_product(d.core, mode, i, j)), 1e-8 * core_sq);
                }
                // Slice norms are the mode singular values; completed directions give zero slices.
                const double expect = i < sv.size() ? sv[i] : 0.0;
                EXPECT_NEAR(std::sqrt(slice_inner_product(d.core, mode, i, i)), expect, 1e-9 * sv.front());
            }
        }
    }
}

TEST(Hosvd, TruncationErrorWithinBound) {
    SplitMix64 rng(33);
    for (int trial = 0; trial < 80; ++trial) {
        const Dims3 dims{2 + rng.below(6), 2 + rng.below(6), 2 + rng.below(6)};
        const Ranks3 ranks{1 + rng.below(dims[0]), 1 + rng.below(dims[1]), 1 + rng.below(dims[2])};
        const Tensor3 t = test::random_tensor(rng, dims);
        const auto d = hosvd(t, ranks);
        EXPECT_EQ(d.core.dims(), ranks);
        const double err = difference(reconstruct(d), t).frobenius_norm();
        EXPECT_LE(err, truncation_error_bound(d.mode_singular_values, ranks) * (1 + 1e-12) + 1e-12);
    }
}

TEST(Hosvd, RankOneTensorHasSingleCoreEntry) {
    const std::vector<double> a{1, 2}, b{3, -1, 2}, c{1, 1};
    Tensor3 t({2, 3, 2});
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t i = 0; i < 2; ++i) t(i, j, k) = a[i] * b[j] * c[k];
    const auto d = hosvd(t, {1, 1, 1});
    EXPECT_NEAR(std::abs(d.core(0, 0, 0)), t.frobenius_norm(), 1e-12);
    EXPECT_LE(difference(reconstruct(d), t).frobenius_norm(), 1e-12);
    EXPECT_NEAR(truncation_error_bound(d.mode_singular_values, {1, 1, 1}), 0.0, 1e-12);
}

TEST(Hosvd, RanksExceedingUnfoldingRankAreCompleted) {
    // mode-3 unfolding is 2 x 16, rank 2, so k3 = 2 but mode-1 has rank ≤ 2 as well.
    SplitMix64 rng(34);
    const Matrix left = test::random_matrix(rng, 4, 2);
    Tensor3 t({4, 4, 2});
    for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t j = 0; j < 4; ++j)
            for (std::size_t i = 0; i < 4; ++i) t(i, j, k) = left(i, k) * static_cast<double>(j + 1);
    const auto d = hosvd(t, {4, 4, 2});
    for (const auto& f : d.factors) EXPECT_LE(orthonormality_defect(f), 1e-12);
    EXPECT_LE(difference(reconstruct(d), t).frobenius_norm(), 1e-10 * t.frobenius_norm());
}

TEST(Hosvd, InvalidRanksThrow) {
    const Tensor3 t({2, 2, 2});
    EXPECT_THROW(hosvd(t, {0, 1, 1}), PreconditionError);
    EXPECT_THROW(hosvd(t, {3, 1, 1}), PreconditionError);
}

TEST(Hosvd, BoundIgnoresRanksPastSpectrum) {
    const std::array<std::vector<double>, 3> sv{std::vector<double>{3, 4}, std::vector<double>{}, std::vector<double>{5}};
    EXPECT_DOUBLE_EQ(truncation_error_bound(sv, {1, 4, 0}), std::sqrt(16.0 + 25.0));
}

}  // namespace
