#include "leuk/service/pipeline.hpp"

#include <cstdio>

#include "json.hpp"
#include "leuk/classifier/model_io.hpp"
#include "leuk/cnn/network_io.hpp"
#include "leuk/core/binary_io.hpp"
#include "leuk/core/crc32.hpp"
#include "leuk/core/error.hpp"
#include "leuk/data/dataset.hpp"
#include "leuk/data/preprocess.hpp"

namespace leuk::service {

std::string hex_crc32(std::span<const std::byte> bytes) {
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc32(bytes)));
    return buf;
}

InferencePipeline::InferencePipeline(classifier::HosvdModel model, std::optional<cnn::Network> network,
                                     std::string model_id)
    : model_(std::move(model)), network_(std::move(network)), model_id_(std::move(model_id)) {
    classifier::validate(model_);
    if (model_.mode == classifier::ModelMode::vector) {
        if (!network_) throw PreconditionError("a vector-mode model needs a CNN network for image input");
        if (network_->arch.hidden != model_.input_rows) {
            throw ShapeError("CNN feature width " + std::to_string(network_->arch.hidden) +
                             " does not match model dimension " + std::to_string(model_.input_rows));
        }
    } else if (model_.input_rows != model_.input_cols) {
        throw PreconditionError("matrix-mode model input must be square for image classification");
    }
}

InferencePipeline InferencePipeline::load(const std::filesystem::path& model_path,
                                          const std::optional<std::filesystem::path>& cnn_path) {
    const auto bytes = read_file_bytes(model_path);
    auto model = classifier::deserialize_model(bytes);
    std::optional<cnn::Network> net;
    if (cnn_path) net = cnn::load_network(*cnn_path);
    return InferencePipeline(std::move(model), std::move(net), hex_crc32(bytes));
}

std::size_t InferencePipeline::input_side() const noexcept {
    return model_.mode == classifier::ModelMode::vector ? network_->arch.side : model_.input_rows;
}

classifier::ClassificationResult InferencePipeline::classify_image(const data::ImageU8& image) const {
    const auto pixels = data::preprocess(image, input_side());
    if (model_.mode == classifier::ModelMode::matrix) return classifier::classify(model_, pixels);
    const auto features = cnn::forward_extract(*network_, pixels).features;
    return classifier::classify(model_, features);
}

classifier::ClassificationResult InferencePipeline::classify_pnm(std::span<const std::byte> bytes) const {
    return classify_image(data::decode_pnm(bytes));
}

std::string InferencePipeline::result_json(const classifier::ClassificationResult& result) const {
    nlohmann::ordered_json j;
    j["label"] = data::label_name(result.label);
    nlohmann::ordered_json residuals;
    for (std::size_t c = 0; c < model_.classes.size(); ++c) {
        residuals[data::label_name(model_.classes[c].label)] = result.residuals[c];
    }
    j["residuals"] = std::move(residuals);
    j["margin"] = result.margin;
    j["model_id"] = model_id_;
    return j.dump();
}

}  // namespace leuk::service
