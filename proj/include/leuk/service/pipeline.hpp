#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>

#include "leuk/classifier/hosvd_model.hpp"
#include "leuk/cnn/network.hpp"
#include "leuk/data/pnm.hpp"

namespace leuk::service {

/// Immutable model (plus extractor network for vector mode) with the
/// decode → preprocess → classify path shared by the CLI and the server.
class InferencePipeline {
public:
    /// Vector-mode models need `network`; matrix-mode models need square
    /// input shapes. Throws PreconditionError otherwise.
    InferencePipeline(classifier::HosvdModel model, std::optional<cnn::Network> network, std::string model_id);

    /// model_id is the lowercase hex CRC32 of the model file.
    static InferencePipeline load(const std::filesystem::path& model_path,
                                  const std::optional<std::filesystem::path>& cnn_path);

    classifier::ClassificationResult classify_image(const data::ImageU8& image) const;
    classifier::ClassificationResult classify_pnm(std::span<const std::byte> bytes) const;

    /// {"label","residuals":{"healthy","ALL"},"margin","model_id"}
    std::string result_json(const classifier::ClassificationResult& result) const;

    const std::string& model_id() const noexcept { return model_id_; }
    const classifier::HosvdModel& model() const noexcept { return model_; }
    std::size_t input_side() const noexcept;

private:
    classifier::HosvdModel model_;
    std::optional<cnn::Network> network_;
    std::string model_id_;
};

std::string hex_crc32(std::span<const std::byte> bytes);

}  // namespace leuk::service
