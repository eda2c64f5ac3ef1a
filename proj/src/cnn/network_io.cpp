#include "leuk/cnn/network_io.hpp"

#include <cmath>
#include <string>

#include "leuk/core/binary_io.hpp"
#include "leuk/core/error.hpp"

namespace leuk::cnn {
namespace {

constexpr char kMagic[] = "HCNN";

struct LayerHeader {
    std::uint8_t kind;
    std::array<std::uint32_t, 4> dims;
    const std::vector<double>* weights;
    const std::vector<double>* bias;
};

std::array<LayerHeader, 4> layer_table(const Network& net) {
    const auto& a = net.arch;
    const auto u = [](std::size_t v) { return static_cast<std::uint32_t>(v); };
    return {{
        {0, {u(a.kernel), u(a.kernel), 1, u(a.conv1)}, &net.params.conv1_w, &net.params.conv1_b},
        {0, {u(a.kernel), u(a.kernel), u(a.conv1), u(a.conv2)}, &net.params.conv2_w, &net.params.conv2_b},
        {1, {u(a.flatten_size()), u(a.hidden), 0, 0}, &net.params.fc1_w, &net.params.fc1_b},
        {1, {u(a.hidden), u(a.classes), 0, 0}, &net.params.fc2_w, &net.params.fc2_b},
    }};
}

}  // namespace

std::vector<std::byte> serialize_network(const Network& net) {
    ByteWriter out;
    out.magic(kMagic);
    out.u32(kNetworkFormatVersion);
    out.u64(net.seed);
    const auto& a = net.arch;
    for (std::size_t v : {a.side, a.kernel, a.conv1, a.conv2, a.hidden, a.classes}) out.u32(static_cast<std::uint32_t>(v));
    const auto table = layer_table(net);
    out.u32(static_cast<std::uint32_t>(table.size()));
    for (const auto& layer : table) {
        out.u8(layer.kind);
        for (auto d : layer.dims) out.u32(d);
        out.u64(static_cast<std::uint64_t>(layer.weights->size() + layer.bias->size()) * 8);
        out.f64s(*layer.weights);
        out.f64s(*layer.bias);
    }
    out.finish_with_crc();
    return std::move(out).take();
}

Network deserialize_network(std::span<const std::byte> bytes) {
    ByteReader in(bytes);
    const auto magic = in.magic();
    if (std::string(magic.data(), 4) != kMagic) throw FormatError(FormatErrorKind::bad_magic, "not an HCNN network file");
    const std::uint32_t version = in.u32();
    if (version != kNetworkFormatVersion) {
        throw FormatError(FormatErrorKind::unsupported_version, "network format version " + std::to_string(version));
    }
    Network net;
    net.seed = in.u64();
    auto& a = net.arch;
    a.side = in.u32();
    a.kernel = in.u32();
    a.conv1 = in.u32();
    a.conv2 = in.u32();
    a.hidden = in.u32();
    a.classes = in.u32();
    try {
        a.validate();
    } catch (const ShapeError& e) {
        throw FormatError(FormatErrorKind::malformed, e.what());
    }
    net.params = Parameters::zeros_like(a);

    const std::uint32_t layers = in.u32();
    auto expected = layer_table(net);
    if (layers != expected.size()) throw FormatError(FormatErrorKind::malformed, "unexpected layer count");
    auto targets = net.params.tensors();
    for (std::size_t l = 0; l < expected.size(); ++l) {
        const std::uint8_t kind = in.u8();
        std::array<std::uint32_t, 4> dims{};
        for (auto& d : dims) d = in.u32();
        const std::uint64_t payload = in.u64();
        if (kind != expected[l].kind || dims != expected[l].dims) {
            throw FormatError(FormatErrorKind::malformed, "layer " + std::to_string(l) + " disagrees with architecture");
        }
        auto& w = *targets[2 * l];
        auto& b = *targets[2 * l + 1];
        if (payload != static_cast<std::uint64_t>(w.size() + b.size()) * 8) {
            throw FormatError(FormatErrorKind::malformed, "layer " + std::to_string(l) + " payload length mismatch");
        }
        w = in.f64s(w.size());
        b = in.f64s(b.size());
        for (const auto* v : {&w, &b}) {
            for (double x : *v) {
                if (!std::isfinite(x)) throw FormatError(FormatErrorKind::malformed, "non-finite weight");
            }
        }
    }
    if (in.remaining() < 4) throw FormatError(FormatErrorKind::truncated, "missing CRC32 trailer");
    if (in.remaining() > 4) throw FormatError(FormatErrorKind::malformed, "trailing bytes after network payload");
    verify_crc_trailer(bytes);
    return net;
}

void save_network(const Network& net, const std::filesystem::path& path) {
    write_file_bytes(path, serialize_network(net));
}

Network load_network(const std::filesystem::path& path) { return deserialize_network(read_file_bytes(path)); }

}  // namespace leuk::cnn
