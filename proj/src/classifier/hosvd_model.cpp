#include "leuk/classifier/hosvd_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "leuk/core/error.hpp"
#include "leuk/simd/kernels.hpp"
#include "leuk/tensor/hosvd.hpp"
#include "leuk/tensor/svd.hpp"
#include "leuk/tensor/tensor3.hpp"

namespace leuk::classifier {
namespace {

using tensor::Matrix;

constexpr double kVectorOrthoTol = 1e-10;
constexpr double kMatrixOrthoTol = 1e-8;
// Core slices below this fraction of the leading slice norm carry no signal.
constexpr double kDropRelative = 1e-12;

std::vector<std::vector<std::size_t>> group_by_class(std::span<const Label> labels, const TrainOptions& options) {
    std::vector<Label> classes = options.classes;
    std::sort(classes.begin(), classes.end());
    if (classes.empty() || std::adjacent_find(classes.begin(), classes.end()) != classes.end()) {
        throw PreconditionError("class list must be nonempty and free of duplicates");
    }
    std::vector<std::vector<std::size_t>> members(classes.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto it = std::lower_bound(classes.begin(), classes.end(), labels[i]);
        if (it == classes.end() || *it != labels[i]) {
            throw PreconditionError("sample " + std::to_string(i) + " has unknown label " + std::to_string(labels[i]));
        }
        members[static_cast<std::size_t>(it - classes.begin())].push_back(i);
    }
    for (std::size_t c = 0; c < classes.size(); ++c) {
        if (members[c].empty()) throw PreconditionError("class " + std::to_string(classes[c]) + " has no samples");
    }
    return members;
}

std::vector<Label> sorted_classes(const TrainOptions& options) {
    std::vector<Label> classes = options.classes;
    std::sort(classes.begin(), classes.end());
    return classes;
}

ClassificationResult finish(const HosvdModel& model, std::vector<double> residuals) {
    ClassificationResult out;
    std::size_t best = 0;
    for (std::size_t c = 1; c < residuals.size(); ++c) {
        if (residuals[c] < residuals[best]) best = c;  // strict: ties keep the lower label
    }
    out.label = model.classes[best].label;
    double second = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < residuals.size(); ++c) {
        if (c != best) second = std::min(second, residuals[c]);
    }
    out.margin = residuals.size() > 1 ? second - residuals[best] : 0.0;
    out.residuals = std::move(residuals);
    return out;
}

}  // namespace

std::vector<Label> HosvdModel::class_labels() const {
    std::vector<Label> out;
    out.reserve(classes.size());
    for (const auto& c : classes) out.push_back(c.label);
    return out;
}

HosvdModel train_vector_mode(const Matrix& features, std::span<const Label> labels, std::size_t rank,
                             const TrainOptions& options) {
    if (features.empty()) throw PreconditionError("train_vector_mode: empty feature matrix");
    if (labels.size() != features.cols()) {
        throw ShapeError("train_vector_mode: " + std::to_string(labels.size()) + " labels for " +
                         std::to_string(features.cols()) + " samples");
    }
    const std::size_t d = features.rows();
    if (rank < 1 || rank > d) {
        throw PreconditionError("train_vector_mode: rank " + std::to_string(rank) + " outside [1, " +
                                std::to_string(d) + "]");
    }
    const auto members = group_by_class(labels, options);
    const auto classes = sorted_classes(options);

    HosvdModel model;
    model.mode = ModelMode::vector;
    model.input_rows = d;
    model.ranks = {rank, 0, 0};
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const auto& idx = members[c];
        if (idx.size() < rank) {
            throw PreconditionError("class " + std::to_string(classes[c]) + " has " + std::to_string(idx.size()) +
                                    " samples, fewer than rank " + std::to_string(rank));
        }
        Matrix block(d, idx.size());
        for (std::size_t j = 0; j < idx.size(); ++j) {
            for (std::size_t i = 0; i < d; ++i) block(i, j) = features(i, idx[j]);
        }
        const auto s = tensor::svd(block);
        model.classes.push_back({classes[c], s.u.columns(0, rank), {}});
    }
    validate(model);
    return model;
}

HosvdModel train_matrix_mode(std::span<const Matrix> images, std::span<const Label> labels,
                             const std::array<std::size_t, 3>& ranks, const TrainOptions& options) {
    if (images.empty()) throw PreconditionError("train_matrix_mode: no images");
    if (labels.size() != images.size()) throw ShapeError("train_matrix_mode: label count differs from image count");
    const std::size_t h = images.front().rows();
    const std::size_t w = images.front().cols();
    for (const auto& img : images) {
        if (img.rows() != h || img.cols() != w) throw ShapeError("train_matrix_mode: images differ in shape");
    }
    const auto [k1, k2, k3] = ranks;
    if (k1 < 1 || k1 > h || k2 < 1 || k2 > w || k3 < 1) {
        throw PreconditionError("train_matrix_mode: ranks must satisfy 1 ≤ k1 ≤ h, 1 ≤ k2 ≤ w, k3 ≥ 1");
    }
    const auto members = group_by_class(labels, options);
    const auto classes = sorted_classes(options);

    HosvdModel model;
    model.mode = ModelMode::matrix;
    model.input_rows = h;
    model.input_cols = w;
    model.ranks = ranks;
    for (std::size_t c = 0; c < classes.size(); ++c) {
        const auto& idx = members[c];
        if (idx.size() < k3) {
            throw PreconditionError("class " + std::to_string(classes[c]) + " has " + std::to_string(idx.size()) +
                                    " samples, fewer than k3 = " + std::to_string(k3));
        }
        tensor::Tensor3 stack({h, w, idx.size()});
        for (std::size_t s = 0; s < idx.size(); ++s) {
            const auto& img = images[idx[s]];
            for (std::size_t j = 0; j < w; ++j) {
                for (std::size_t i = 0; i < h; ++i) stack(i, j, s) = img(i, j);
            }
        }

        const auto d = tensor::hosvd(stack, {k1, k2, k3});
        // Mode-3 factor of the mode-1/2 compressed stack, so the k1×k2 core
        // slices stay all-orthogonal under the truncation of modes 1 and 2.
        tensor::Tensor3 compressed = tensor::mode_product(stack, d.factors[0].transpose(), 1);
        compressed = tensor::mode_product(compressed, d.factors[1].transpose(), 2);
        const auto s3 = tensor::svd(tensor::unfold(compressed, 3));
        const std::size_t k3_eff = std::min(k3, s3.u.cols());
        const auto core = tensor::mode_product(compressed, s3.u.columns(0, k3_eff).transpose(), 3);

        ClassSubspace subspace{classes[c], {}, {}};
        const double lead = s3.sigma.front();
        for (std::size_t j = 0; j < k3_eff; ++j) {
            const double norm = s3.sigma[j];
            if (!(norm > kDropRelative * lead) || norm == 0.0) continue;
            Matrix slice(k1, k2);
            for (std::size_t b = 0; b < k2; ++b) {
                for (std::size_t a = 0; a < k1; ++a) slice(a, b) = core(a, b, j);
            }
            Matrix basis = tensor::multiply(tensor::multiply(d.factors[0], slice), d.factors[1].transpose());
            const double bnorm = basis.frobenius_norm();
            for (double& x : basis.data()) x /= bnorm;
            subspace.basis_matrices.push_back(std::move(basis));
        }
        if (subspace.basis_matrices.empty()) {
            throw DataError("class " + std::to_string(classes[c]) + " has only zero-norm samples");
        }
        model.classes.push_back(std::move(subspace));
    }
    validate(model);
    return model;
}

ClassificationResult classify(const HosvdModel& model, std::span<const double> sample) {
    if (model.mode != ModelMode::vector) throw ShapeError("classify: matrix-mode model needs a matrix sample");
    if (sample.size() != model.input_rows) {
        throw ShapeError("classify: sample length " + std::to_string(sample.size()) + " != model dimension " +
                         std::to_string(model.input_rows));
    }
    const double norm = std::sqrt(simd::dot(sample, sample));
    if (!(norm > 0.0)) throw PreconditionError("classify: sample has zero norm");

    std::vector<double> residuals;
    std::vector<double> remainder(sample.size());
    std::vector<double> column(sample.size());
    for (const auto& cls : model.classes) {
        // ‖z − QQᵀz‖ evaluated directly; ‖z‖² − ‖Qᵀz‖² cancels badly near 0.
        std::copy(sample.begin(), sample.end(), remainder.begin());
        for (std::size_t k = 0; k < cls.basis.cols(); ++k) {
            for (std::size_t i = 0; i < column.size(); ++i) column[i] = cls.basis(i, k);
            simd::axpy(-simd::dot(column, sample), column, remainder);
        }
        residuals.push_back(std::sqrt(simd::dot(remainder, remainder)) / norm);
    }
    return finish(model, std::move(residuals));
}

ClassificationResult classify(const HosvdModel& model, const Matrix& sample) {
    if (model.mode != ModelMode::matrix) {
        if (sample.cols() == 1 || sample.rows() == 1) return classify(model, sample.data());
        throw ShapeError("classify: vector-mode model needs a vector sample");
    }
    if (sample.rows() != model.input_rows || sample.cols() != model.input_cols) {
        throw ShapeError("classify: image " + std::to_string(sample.rows()) + "x" + std::to_string(sample.cols()) +
                         " does not match model " + std::to_string(model.input_rows) + "x" +
                         std::to_string(model.input_cols));
    }
    const double norm = sample.frobenius_norm();
    if (!(norm > 0.0)) throw PreconditionError("classify: sample has zero norm");

    std::vector<double> residuals;
    Matrix remainder = sample;
    for (const auto& cls : model.classes) {
        std::copy(sample.data().begin(), sample.data().end(), remainder.data().begin());
        for (const auto& b : cls.basis_matrices) {
            simd::axpy(-simd::dot(b.data(), sample.data()), b.data(), remainder.data());
        }
        residuals.push_back(remainder.frobenius_norm() / norm);
    }
    return finish(model, std::move(residuals));
}

void validate(const HosvdModel& model) {
    if (model.classes.empty()) throw PreconditionError("model has no classes");
    for (std::size_t c = 1; c < model.classes.size(); ++c) {
        if (model.classes[c].label <= model.classes[c - 1].label) {
            throw PreconditionError("model class labels must be strictly increasing");
        }
    }
    for (const auto& cls : model.classes) {
        if (model.mode == ModelMode::vector) {
            if (cls.basis.rows() != model.input_rows) throw ShapeError("basis row count differs from input dimension");
            const double defect = tensor::orthonormality_defect(cls.basis);
            if (!(defect <= kVectorOrthoTol)) {
                throw NumericError("class " + std::to_string(cls.label) + " basis not orthonormal (defect " +
                                   std::to_string(defect) + ")");
            }
        } else {
            const auto& bs = cls.basis_matrices;
            if (bs.empty()) throw PreconditionError("class " + std::to_string(cls.label) + " has no basis matrices");
            for (std::size_t i = 0; i < bs.size(); ++i) {
                if (bs[i].rows() != model.input_rows || bs[i].cols() != model.input_cols) {
                    throw ShapeError("basis matrix shape differs from input shape");
                }
                for (std::size_t j = 0; j <= i; ++j) {
                    const double ip = tensor::frobenius_dot(bs[i], bs[j]);
                    if (!(std::abs(ip - (i == j ? 1.0 : 0.0)) <= kMatrixOrthoTol)) {
                        throw NumericError("class " + std::to_string(cls.label) +
                                           " basis matrices not orthonormal (inner product " + std::to_string(ip) +
                                           ")");
                    }
                }
            }
        }
    }
}

}  // namespace leuk::classifier
