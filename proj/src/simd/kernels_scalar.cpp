#include "kernels_impl.hpp"

namespace leuk::simd::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
    return sum;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double squared_distance_scalar(const double* a, const double* b, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

void rotate_scalar(double* x, double* y, double c, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = c * xi - s * yi;
        y[i] = s * xi + c * yi;
    }
}

Gram2 gram2_scalar(const double* a, const double* b, std::size_t n) {
    Gram2 g{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        g.aa += a[i] * a[i];
        g.bb += b[i] * b[i];
        g.ab += a[i] * b[i];
    }
    return g;
}

constexpr KernelTable kScalar{
    Isa::scalar, dot_scalar, axpy_scalar, squared_distance_scalar, rotate_scalar, gram2_scalar,
};

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

}  // namespace leuk::simd::detail
