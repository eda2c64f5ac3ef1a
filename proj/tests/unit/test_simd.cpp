#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "leuk/core/rng.hpp"
#include "leuk/simd/kernels.hpp"

using namespace leuk;

namespace {

std::vector<double> randoms(SplitMix64& rng, std::size_t n) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.normal();
    return v;
}

// Rounding bound for a reassociated sum of n products.
double sum_tol(const std::vector<double>& a, const std::vector<double>& b, std::size_t off, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += std::abs(a[off + i] * b[off + i]);
    return 4.0 * static_cast<double>(n + 1) * 1.2e-16 * s + 1e-300;
}

class KernelEquivalence : public ::testing::TestWithParam<const simd::KernelTable*> {};

TEST_P(KernelEquivalence, DotMatchesScalar) {
    const auto& k = *GetParam();
    const auto& ref = simd::scalar_kernels();
    SplitMix64 rng(1);
    for (std::size_t n = 0; n < 70; ++n) {
        for (std::size_t off = 0; off < 3; ++off) {
            const auto a = randoms(rng, n + off);
            const auto b = randoms(rng, n + off);
            EXPECT_NEAR(k.dot(a.data() + off, b.data() + off, n), ref.dot(a.data() + off, b.data() + off, n),
                        sum_tol(a, b, off, n));
        }
    }
}

TEST_P(KernelEquivalence, SquaredDistanceMatchesScalar) {
    const auto& k = *GetParam();
    const auto& ref = simd::scalar_kernels();
    SplitMix64 rng(2);
    for (std::size_t n = 0; n < 70; ++n) {
        const auto a = randoms(rng, n + 1);
        const auto b = randoms(rng, n + 1);
        std::vector<double> d(n + 1);
        for (std::size_t i = 0; i <= n; ++i) d[i] = a[i] - b[i];
        EXPECT_NEAR(k.squared_distance(a.data() + 1, b.data() + 1, n),
                    ref.squared_distance(a.data() + 1, b.data() + 1, n), sum_tol(d, d, 1, n));
    }
}

TEST_P(KernelEquivalence, AxpyAndRotateMatchScalar) {
    const auto& k = *GetParam();
    const auto& ref = simd::scalar_kernels();
    SplitMix64 rng(3);
    for (std::size_t n = 0; n < 70; ++n) {
        const auto x = randoms(rng, n);
        auto y1 = randoms(rng, n);
        auto y2 = y1;
        const double alpha = rng.normal();
        k.axpy(alpha, x.data(), y1.data(), n);
        ref.axpy(alpha, x.data(), y2.data(), n);
        for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(y1[i], y2[i], 1e-15 * (std::abs(alpha * x[i]) + std::abs(y2[i])) + 1e-300);

        auto p1 = randoms(rng, n);
        auto q1 = randoms(rng, n);
        auto p2 = p1;
        auto q2 = q1;
        const double angle = rng.uniform(0.0, 6.28);
        k.rotate(p1.data(), q1.data(), std::cos(angle), std::sin(angle), n);
        ref.rotate(p2.data(), q2.data(), std::cos(angle), std::sin(angle), n);
        for (std::size_t i = 0; i < n; ++i) {
            EXPECT_NEAR(p1[i], p2[i], 1e-14);
            EXPECT_NEAR(q1[i], q2[i], 1e-14);
        }
    }
}

TEST_P(KernelEquivalence, Gram2MatchesSeparateDots) {
    const auto& k = *GetParam();
    const auto& ref = simd::scalar_kernels();
    SplitMix64 rng(4);
    for (std::size_t n = 0; n < 70; ++n) {
        const auto a = randoms(rng, n);
        const auto b = randoms(rng, n);
        const auto g = k.gram2(a.data(), b.data(), n);
        EXPECT_NEAR(g.aa, ref.dot(a.data(), a.data(), n), sum_tol(a, a, 0, n));
        EXPECT_NEAR(g.bb, ref.dot(b.data(), b.data(), n), sum_tol(b, b, 0, n));
        EXPECT_NEAR(g.ab, ref.dot(a.data(), b.data(), n), sum_tol(a, b, 0, n));
    }
}

TEST_P(KernelEquivalence, RepeatableWithinVariant) {
    const auto& k = *GetParam();
    SplitMix64 rng(5);
    const auto a = randoms(rng, 1001);
    const auto b = randoms(rng, 1001);
    const double first = k.dot(a.data(), b.data(), a.size());
    for (int i = 0; i < 5; ++i) EXPECT_EQ(k.dot(a.data(), b.data(), a.size()), first);
}

INSTANTIATE_TEST_SUITE_P(Variants, KernelEquivalence, ::testing::ValuesIn(simd::available_kernels()),
                         [](const auto& info) { return std::string(simd::to_string(info.param->isa)); });

TEST(KernelDispatch, ScalarIsAlwaysAvailableAndSelectable) {
    const auto variants = simd::available_kernels();
    ASSERT_FALSE(variants.empty());
    EXPECT_EQ(variants.front()->isa, simd::Isa::scalar);
    const auto original = simd::active().isa;
    EXPECT_TRUE(simd::select(simd::Isa::scalar));
    EXPECT_EQ(simd::active().isa, simd::Isa::scalar);
    EXPECT_TRUE(simd::select(original));
}

TEST(KernelDispatch, UnavailableVariantIsRefused) {
    const auto original = simd::active().isa;
#if defined(__x86_64__)
    EXPECT_FALSE(simd::select(simd::Isa::neon));
#elif defined(__aarch64__)
    EXPECT_FALSE(simd::select(simd::Isa::avx2));
#endif
    EXPECT_EQ(simd::active().isa, original);
}

}  // namespace
