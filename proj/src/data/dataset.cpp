#include "leuk/data/dataset.hpp"

#include <algorithm>
#include <cctype>

#include "leuk/core/binary_io.hpp"
#include "leuk/core/error.hpp"
#include "leuk/core/log.hpp"
#include "leuk/data/csv.hpp"
#include "leuk/data/pnm.hpp"
#include "leuk/data/preprocess.hpp"

namespace leuk::data {
namespace fs = std::filesystem;

namespace {

bool has_image_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    return ext == ".pgm" || ext == ".ppm";
}

}  // namespace

std::size_t LabeledDataset::count(int label) const noexcept {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), label));
}

LabeledDataset LabeledDataset::subset(std::span<const std::size_t> indices) const {
    LabeledDataset out;
    out.kind = kind;
    for (std::size_t i : indices) {
        if (i >= size()) throw ShapeError("subset index out of range");
        if (kind == DatasetKind::images) {
            out.images.push_back(images[i]);
        } else {
            out.vectors.push_back(vectors[i]);
        }
        out.labels.push_back(labels[i]);
        if (i < sources.size()) out.sources.push_back(sources[i]);
    }
    return out;
}

tensor::Matrix LabeledDataset::feature_matrix() const {
    if (kind != DatasetKind::feature_vectors || vectors.empty()) {
        throw PreconditionError("feature_matrix: dataset holds no feature vectors");
    }
    const std::size_t d = vectors.front().size();
    tensor::Matrix m(d, vectors.size());
    for (std::size_t j = 0; j < vectors.size(); ++j) {
        if (vectors[j].size() != d) throw ShapeError("feature vectors differ in length");
        for (std::size_t i = 0; i < d; ++i) m(i, j) = vectors[j][i];
    }
    return m;
}

LabeledDataset load_dataset(const fs::path& dir, std::size_t side) {
    LabeledDataset ds;
    ds.kind = DatasetKind::images;
    for (int label = 0; label < 2; ++label) {
        const fs::path class_dir = dir / kClassNames[label];
        if (!fs::is_directory(class_dir)) {
            throw DataError("missing class directory '" + std::string(kClassNames[label]) + "' under " + dir.string());
        }
        std::vector<fs::path> files;
        for (const auto& entry : fs::directory_iterator(class_dir)) {
            if (!entry.is_regular_file()) continue;
            if (has_image_extension(entry.path())) {
                files.push_back(entry.path());
            } else {
                ++ds.skipped_files;
                log::warn("skipping " + entry.path().string() + " (not .pgm/.ppm)");
            }
        }
        if (files.empty()) throw DataError("class '" + std::string(kClassNames[label]) + "' has no usable images");
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            const auto bytes = read_file_bytes(f);
            try {
                ds.images.push_back(preprocess(decode_pnm(bytes), side));
            } catch (const FormatError& e) {
                throw DataError(f.string() + ": " + e.what());
            }
            ds.labels.push_back(label);
            ds.sources.push_back(f.string());
        }
    }
    return ds;
}

LabeledDataset load_any(const fs::path& path, std::size_t side) {
    if (fs::is_regular_file(path) && path.extension() == ".csv") return read_feature_csv(path);
    return load_dataset(path, side);
}

const char* label_name(int label) {
    if (label < 0 || label > 1) throw PreconditionError("label must be 0 or 1");
    return kClassNames[label];
}

}  // namespace leuk::data
