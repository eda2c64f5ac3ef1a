#pragma once

// Data-parallel inner loops shared by the SVD, the convolutional network and
// the distance-based baselines. Every kernel has a scalar reference
// implementation; vector variants (AVX2+FMA on x86-64, NEON on AArch64) are
// compiled into separate translation units and picked at runtime.
//
// Vector variants reassociate floating-point sums, so their results agree
// with the scalar reference to rounding, not bitwise. Within one variant the
// reduction order is fixed and results are reproducible.

#include <cassert>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace leuk::simd {

enum class Isa { scalar, avx2, neon };

std::string_view to_string(Isa isa) noexcept;

struct Gram2 {
    double aa;
    double bb;
    double ab;
};

struct KernelTable {
    Isa isa;
    /// sum_i a[i] * b[i]
    double (*dot)(const double* a, const double* b, std::size_t n);
    /// y[i] += alpha * x[i]
    void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
    /// sum_i (a[i] - b[i])^2
    double (*squared_distance)(const double* a, const double* b, std::size_t n);
    /// Plane rotation: x <- c*x - s*y, y <- s*x + c*y
    void (*rotate)(double* x, double* y, double c, double s, std::size_t n);
    /// (a.a, b.b, a.b) in one pass
    Gram2 (*gram2)(const double* a, const double* b, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

/// Variants compiled into this build and supported by the running CPU,
/// scalar first.
std::vector<const KernelTable*> available_kernels();

/// The table used by library code. Chosen on first use: the best available
/// variant, unless the environment variable HOSVD_SIMD names one of
/// "scalar", "avx2", "neon".
const KernelTable& active() noexcept;

/// Forces a variant; returns false (and changes nothing) when unavailable.
/// Not synchronized with concurrent kernel calls; call at startup or in tests.
bool select(Isa isa) noexcept;

inline double dot(std::span<const double> a, std::span<const double> b) noexcept {
    assert(a.size() == b.size());
    return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) noexcept {
    assert(x.size() == y.size());
    active().axpy(alpha, x.data(), y.data(), x.size());
}

inline double squared_distance(std::span<const double> a, std::span<const double> b) noexcept {
    assert(a.size() == b.size());
    return active().squared_distance(a.data(), b.data(), a.size());
}

inline void rotate(std::span<double> x, std::span<double> y, double c, double s) noexcept {
    assert(x.size() == y.size());
    active().rotate(x.data(), y.data(), c, s, x.size());
}

inline Gram2 gram2(std::span<const double> a, std::span<const double> b) noexcept {
    assert(a.size() == b.size());
    return active().gram2(a.data(), b.data(), a.size());
}

}  // namespace leuk::simd
