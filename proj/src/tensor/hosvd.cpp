#include "leuk/tensor/hosvd.hpp"

#include <cmath>
#include <string>

#include "leuk/core/error.hpp"

namespace leuk::tensor {

HosvdDecomposition hosvd(const Tensor3& t, const Ranks3& ranks, const SvdOptions& options) {
    if (t.size() == 0) throw PreconditionError("hosvd: empty tensor");
    for (int mode = 1; mode <= 3; ++mode) {
        const std::size_t k = ranks[static_cast<std::size_t>(mode - 1)];
        if (k < 1 || k > t.dim(mode)) {
            throw PreconditionError("hosvd: rank " + std::to_string(k) + " for mode " + std::to_string(mode) +
                                    " outside [1, " + std::to_string(t.dim(mode)) + "]");
        }
    }

    HosvdDecomposition d;
    Tensor3 core = t;
    for (int mode = 1; mode <= 3; ++mode) {
        const auto idx = static_cast<std::size_t>(mode - 1);
        SvdResult s = svd(unfold(t, mode), options);
        const std::size_t available = s.u.cols();
        Matrix factor = ranks[idx] <= available ? s.u.columns(0, ranks[idx])
                                                : complete_orthonormal_columns(s.u, ranks[idx]);
        core = mode_product(core, factor.transpose(), mode);
        d.factors[idx] = std::move(factor);
        d.mode_singular_values[idx] = std::move(s.sigma);
    }
    d.core = std::move(core);
    return d;
}

Tensor3 reconstruct(const HosvdDecomposition& d) {
    Tensor3 out = d.core;
    for (int mode = 1; mode <= 3; ++mode) {
        const auto& factor = d.factors[static_cast<std::size_t>(mode - 1)];
        if (factor.cols() != d.core.dim(mode)) {
            throw ShapeError("reconstruct: factor " + std::to_string(mode) + " has " +
                             std::to_string(factor.cols()) + " columns, core mode size is " +
                             std::to_string(d.core.dim(mode)));
        }
        out = mode_product(out, factor, mode);
    }
    return out;
}

double truncation_error_bound(const std::array<std::vector<double>, 3>& mode_singular_values,
                              const Ranks3& ranks) {
    double sum = 0.0;
    for (std::size_t n = 0; n < 3; ++n) {
        const auto& sv = mode_singular_values[n];
        for (std::size_t i = ranks[n]; i < sv.size(); ++i) sum += sv[i] * sv[i];
    }
    return std::sqrt(sum);
}

}  // namespace leuk::tensor
