#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "leuk/tensor/matrix.hpp"

namespace leuk::data {

enum class DatasetKind { images, feature_vectors };

/// Class directory names, indexed by label.
inline constexpr const char* kClassNames[2] = {"healthy", "ALL"};

struct LabeledDataset {
    DatasetKind kind = DatasetKind::images;
    std::vector<tensor::Matrix> images;        ///< kind == images
    std::vector<std::vector<double>> vectors;  ///< kind == feature_vectors
    std::vector<int> labels;                   ///< 0 healthy, 1 ALL
    std::vector<std::string> sources;
    std::size_t skipped_files = 0;

    std::size_t size() const noexcept { return labels.size(); }
    std::size_t count(int label) const noexcept;
    /// Samples at `indices`, in that order.
    LabeledDataset subset(std::span<const std::size_t> indices) const;
    /// Feature vectors as the columns of a d×N matrix.
    tensor::Matrix feature_matrix() const;
};

/// Reads `<dir>/healthy` (label 0) then `<dir>/ALL` (label 1); within a class
/// files are taken in lexicographic path order. Only .pgm/.ppm files are
/// decoded; anything else is skipped and counted in `skipped_files`.
/// Throws DataError for a missing class directory or a class without images.
LabeledDataset load_dataset(const std::filesystem::path& dir, std::size_t side);

/// A directory of images, or a feature CSV when `path` is a .csv file.
LabeledDataset load_any(const std::filesystem::path& path, std::size_t side);

const char* label_name(int label);

}  // namespace leuk::data
