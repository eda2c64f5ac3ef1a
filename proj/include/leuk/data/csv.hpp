#pragma once

#include <filesystem>
#include <string>

#include "leuk/data/dataset.hpp"

namespace leuk::data {

/// Header "label,f0,...,f{d-1}", one row per sample, shortest round-trip
/// decimal floats.
std::string feature_csv(const LabeledDataset& ds);
void write_feature_csv(const LabeledDataset& ds, const std::filesystem::path& path);

/// Inverse of write_feature_csv. Throws DataError on malformed input.
LabeledDataset parse_feature_csv(const std::string& text);
LabeledDataset read_feature_csv(const std::filesystem::path& path);

}  // namespace leuk::data
