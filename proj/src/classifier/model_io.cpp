#include "leuk/classifier/model_io.hpp"

#include <string>

#include "leuk/core/binary_io.hpp"
#include "leuk/core/error.hpp"

namespace leuk::classifier {
namespace {

constexpr char kMagic[] = "HSVD";

std::uint32_t narrow(std::size_t v) {
    if (v > UINT32_MAX) throw PreconditionError("model dimension exceeds 32 bits");
    return static_cast<std::uint32_t>(v);
}

tensor::Matrix read_matrix(ByteReader& in, std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0) throw FormatError(FormatErrorKind::malformed, "zero matrix dimension");
    auto values = in.f64s(rows * cols);
    try {
        return tensor::Matrix(rows, cols, std::move(values));
    } catch (const PreconditionError&) {
        throw FormatError(FormatErrorKind::malformed, "non-finite value in payload");
    }
}

}  // namespace

std::vector<std::byte> serialize_model(const HosvdModel& model) {
    ByteWriter out;
    out.magic(kMagic);
    out.u32(model.format_version);
    out.u8(static_cast<std::uint8_t>(model.mode));
    out.u32(narrow(model.classes.size()));
    for (const auto& cls : model.classes) {
        out.u32(static_cast<std::uint32_t>(cls.label));
        if (model.mode == ModelMode::vector) {
            out.u32(narrow(cls.basis.rows()));
            out.u32(narrow(cls.basis.cols()));
            out.u64(static_cast<std::uint64_t>(cls.basis.size()) * 8);
            out.f64s(cls.basis.data());
        } else {
            out.u32(narrow(model.input_rows));
            out.u32(narrow(model.input_cols));
            out.u32(narrow(model.ranks[0]));
            out.u32(narrow(model.ranks[1]));
            out.u32(narrow(model.ranks[2]));
            out.u32(narrow(cls.basis_matrices.size()));
            out.u64(static_cast<std::uint64_t>(cls.basis_matrices.size()) * model.input_rows * model.input_cols * 8);
            for (const auto& b : cls.basis_matrices) out.f64s(b.data());
        }
    }
    out.finish_with_crc();
    return std::move(out).take();
}

HosvdModel deserialize_model(std::span<const std::byte> bytes) {
    ByteReader in(bytes);
    const auto magic = in.magic();
    if (std::string(magic.data(), 4) != kMagic) throw FormatError(FormatErrorKind::bad_magic, "not an HSVD model file");
    HosvdModel model;
    model.format_version = in.u32();
    if (model.format_version != HosvdModel::kFormatVersion) {
        throw FormatError(FormatErrorKind::unsupported_version,
                          "model format version " + std::to_string(model.format_version));
    }
    const std::uint8_t mode = in.u8();
    if (mode > 1) throw FormatError(FormatErrorKind::malformed, "unknown model mode " + std::to_string(mode));
    model.mode = static_cast<ModelMode>(mode);
    const std::uint32_t class_count = in.u32();
    if (class_count == 0) throw FormatError(FormatErrorKind::malformed, "model has no classes");

    for (std::uint32_t c = 0; c < class_count; ++c) {
        ClassSubspace cls;
        cls.label = static_cast<Label>(in.u32());
        if (model.mode == ModelMode::vector) {
            const std::size_t d = in.u32();
            const std::size_t k = in.u32();
            const std::uint64_t payload = in.u64();
            if (payload != static_cast<std::uint64_t>(d) * k * 8) {
                throw FormatError(FormatErrorKind::malformed, "payload length does not match shape header");
            }
            if (c == 0) {
                model.input_rows = d;
                model.ranks = {k, 0, 0};
            } else if (d != model.input_rows || k != model.ranks[0]) {
                throw FormatError(FormatErrorKind::malformed, "classes disagree on shape");
            }
            cls.basis = read_matrix(in, d, k);
        } else {
            const std::size_t h = in.u32();
            const std::size_t w = in.u32();
            const std::array<std::size_t, 3> ranks{in.u32(), in.u32(), in.u32()};
            const std::size_t kept = in.u32();
            const std::uint64_t payload = in.u64();
            if (payload != static_cast<std::uint64_t>(kept) * h * w * 8) {
                throw FormatError(FormatErrorKind::malformed, "payload length does not match shape header");
            }
            if (c == 0) {
                model.input_rows = h;
                model.input_cols = w;
                model.ranks = ranks;
            } else if (h != model.input_rows || w != model.input_cols || ranks != model.ranks) {
                throw FormatError(FormatErrorKind::malformed, "classes disagree on shape");
            }
            for (std::size_t j = 0; j < kept; ++j) cls.basis_matrices.push_back(read_matrix(in, h, w));
        }
        model.classes.push_back(std::move(cls));
    }

    if (in.remaining() < 4) throw FormatError(FormatErrorKind::truncated, "missing CRC32 trailer");
    if (in.remaining() > 4) throw FormatError(FormatErrorKind::malformed, "trailing bytes after model payload");
    verify_crc_trailer(bytes);
    return model;
}

void save_model(const HosvdModel& model, const std::filesystem::path& path) {
    write_file_bytes(path, serialize_model(model));
}

HosvdModel load_model(const std::filesystem::path& path) { return deserialize_model(read_file_bytes(path)); }

}  // namespace leuk::classifier
