#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "leuk/tensor/matrix.hpp"

namespace leuk::classifier {

using Label = int;

inline constexpr Label kHealthy = 0;
inline constexpr Label kAll = 1;

enum class ModelMode : std::uint8_t { vector = 0, matrix = 1 };

/// One class's subspace. Vector mode fills `basis` (d×k, orthonormal
/// columns); matrix mode fills `basis_matrices` (h×w each, orthonormal under
/// the Frobenius inner product).
struct ClassSubspace {
    Label label = 0;
    tensor::Matrix basis;
    std::vector<tensor::Matrix> basis_matrices;
};

struct HosvdModel {
    static constexpr std::uint32_t kFormatVersion = 1;

    ModelMode mode = ModelMode::vector;
    std::uint32_t format_version = kFormatVersion;
    /// d for vector mode; (h, w) for matrix mode (`input_cols` unused = 0 in vector mode).
    std::size_t input_rows = 0;
    std::size_t input_cols = 0;
    /// Vector mode: {k, 0, 0}. Matrix mode: requested {k1, k2, k3}.
    std::array<std::size_t, 3> ranks{0, 0, 0};
    /// Ordered by strictly increasing label.
    std::vector<ClassSubspace> classes;

    std::vector<Label> class_labels() const;
};

struct ClassificationResult {
    Label label = 0;
    /// Relative residual per class, in the order of HosvdModel::classes.
    std::vector<double> residuals;
    /// Second-smallest minus smallest residual (0 with a single class).
    double margin = 0.0;
};

struct TrainOptions {
    /// Every listed class must be present; labels outside the list are rejected.
    std::vector<Label> classes{kHealthy, kAll};
};

/// Per-class truncated SVD of the column samples in `features` (d×N).
/// Throws PreconditionError for a missing class, a class with fewer than
/// `rank` samples, rank > d or an unknown label.
HosvdModel train_vector_mode(const tensor::Matrix& features, std::span<const Label> labels, std::size_t rank,
                             const TrainOptions& options = {});

/// Per-class order-3 HOSVD of the h×w×n_c stack of that class's images.
/// Basis matrices are the leading mode-3 core slices mapped back through the
/// mode-1/2 factors, normalized to unit Frobenius norm; zero-norm slices are
/// dropped, which reduces that class's basis size.
HosvdModel train_matrix_mode(std::span<const tensor::Matrix> images, std::span<const Label> labels,
                             const std::array<std::size_t, 3>& ranks, const TrainOptions& options = {});

/// Minimal relative residual rule with lowest-label tie-break.
/// Throws PreconditionError for a zero sample and ShapeError for a mismatch.
ClassificationResult classify(const HosvdModel& model, std::span<const double> sample);
ClassificationResult classify(const HosvdModel& model, const tensor::Matrix& sample);

/// Checks the documented model invariants; throws NumericError or
/// PreconditionError describing the first violation.
void validate(const HosvdModel& model);

}  // namespace leuk::classifier
