#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "leuk/cnn/network.hpp"
#include "leuk/data/dataset.hpp"
#include "leuk/tensor/matrix.hpp"

namespace leuk::eval {

/// One train/test split as seen by a classifier. Feature vectors are always
/// present: raw vectors for feature datasets, CNN features for image datasets.
struct FoldData {
    std::size_t fold = 0;
    std::vector<std::vector<double>> train_features, test_features;
    std::vector<int> train_labels, test_labels;
    std::vector<tensor::Matrix> train_images, test_images;  ///< image datasets only
    std::optional<std::vector<int>> cnn_predictions;        ///< softmax-head argmax on the test images
};

using FitPredict = std::function<std::vector<int>(const FoldData&)>;

struct ClassifierSpec {
    std::string name;
    FitPredict fit_predict;
    bool needs_images = false;
};

struct HarnessConfig {
    std::size_t folds = 5;
    std::vector<std::uint64_t> seeds{42, 43, 44, 45, 46, 47};
    cnn::Architecture architecture{};
    cnn::TrainConfig cnn_train{};
    /// Fixed extractor for image datasets. Without one a network is trained
    /// on each fold's training part.
    std::optional<cnn::Network> extractor;
    std::size_t vector_rank = 8;
    std::array<std::size_t, 3> matrix_ranks{16, 16, 4};
    std::size_t elm_hidden = 64;
    std::uint64_t elm_seed = 42;
    /// Worker threads for fold preparation (0: hardware concurrency).
    std::size_t threads = 0;
};

using Confusion = std::array<std::array<std::size_t, 2>, 2>;  ///< rows true, cols predicted

struct EvalReport {
    std::string classifier;
    std::vector<double> fold_accuracies;  ///< repeat-major, fold-minor
    double mean = 0.0;
    double std = 0.0;  ///< sample standard deviation
    Confusion confusion{};
    std::uint64_t seed = 0;
    std::size_t folds = 0;
    std::size_t repeats = 0;
};

/// Known names: hosvd, hosvd-matrix, 1nn, 5nn, elm, cnn.
/// Throws PreconditionError for anything else.
ClassifierSpec make_classifier(const std::string& name, const HarnessConfig& config);
std::vector<std::string> default_classifiers(data::DatasetKind kind);

/// Stratified split plus, for image datasets, the per-fold feature extraction.
std::vector<FoldData> prepare_folds(const data::LabeledDataset& dataset, std::size_t k, std::uint64_t seed,
                                    const HarnessConfig& config);

/// Runs `spec` on prepared folds. Errors are rethrown with the fold index.
EvalReport evaluate_folds(const ClassifierSpec& spec, const std::vector<FoldData>& folds, std::uint64_t seed);

EvalReport cross_validate(const ClassifierSpec& spec, const data::LabeledDataset& dataset, std::size_t k,
                          std::uint64_t seed, const HarnessConfig& config = {});

/// Every classifier over the same folds for each seed in `config.seeds`.
std::vector<EvalReport> evaluate_suite(const std::vector<ClassifierSpec>& specs, const data::LabeledDataset& dataset,
                                       const HarnessConfig& config);

double mean_of(const std::vector<double>& values);
double sample_std(const std::vector<double>& values);

}  // namespace leuk::eval
