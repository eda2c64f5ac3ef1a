#include "leuk/data/pnm.hpp"

#include <cctype>
#include <string>

#include "leuk/core/error.hpp"

namespace leuk::data {
namespace {

class HeaderCursor {
public:
    explicit HeaderCursor(std::span<const std::byte> bytes) : bytes_(bytes) {}

    std::size_t number(const char* what) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size()) throw FormatError(FormatErrorKind::truncated, std::string("header ends before ") + what);
        std::size_t value = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && std::isdigit(ch())) {
            value = value * 10 + static_cast<std::size_t>(ch() - '0');
            if (value > (1u << 24)) throw FormatError(FormatErrorKind::malformed, std::string(what) + " too large");
            ++pos_;
            ++digits;
        }
        if (digits == 0) throw FormatError(FormatErrorKind::malformed, std::string("expected ") + what);
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    void single_whitespace() {
        if (pos_ >= bytes_.size()) throw FormatError(FormatErrorKind::truncated, "header ends before raster");
        if (!std::isspace(ch())) throw FormatError(FormatErrorKind::malformed, "missing whitespace after maxval");
        ++pos_;
    }

    std::size_t position() const noexcept { return pos_; }

private:
    unsigned char ch() const { return static_cast<unsigned char>(bytes_[pos_]); }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(ch())) {
                ++pos_;
            } else if (ch() == '#') {
                while (pos_ < bytes_.size() && ch() != '\n' && ch() != '\r') ++pos_;
            } else {
                break;
            }
        }
    }

    std::span<const std::byte> bytes_;
    std::size_t pos_ = 2;
};

}  // namespace

ImageU8 decode_pnm(std::span<const std::byte> bytes) {
    if (bytes.size() < 2 || static_cast<char>(bytes[0]) != 'P' ||
        (static_cast<char>(bytes[1]) != '5' && static_cast<char>(bytes[1]) != '6')) {
        throw FormatError(FormatErrorKind::bad_magic, "expected P5 or P6");
    }
    ImageU8 img;
    img.channels = static_cast<char>(bytes[1]) == '5' ? 1 : 3;

    HeaderCursor cursor(bytes);
    img.width = cursor.number("width");
    img.height = cursor.number("height");
    const std::size_t maxval = cursor.number("maxval");
    if (img.width == 0 || img.height == 0) throw FormatError(FormatErrorKind::malformed, "zero image dimension");
    if (maxval != 255) {
        throw FormatError(FormatErrorKind::unsupported_maxval, "maxval " + std::to_string(maxval) + " (only 255)");
    }
    cursor.single_whitespace();

    const std::size_t need = img.width * img.height * img.channels;
    const std::size_t have = bytes.size() - cursor.position();
    if (have < need) {
        throw FormatError(FormatErrorKind::truncated,
                          "raster needs " + std::to_string(need) + " bytes, have " + std::to_string(have));
    }
    img.pixels.resize(need);
    for (std::size_t i = 0; i < need; ++i) img.pixels[i] = static_cast<std::uint8_t>(bytes[cursor.position() + i]);
    return img;
}

std::vector<std::byte> encode_pnm(const ImageU8& image) {
    if (image.channels != 1 && image.channels != 3) throw PreconditionError("encode_pnm: channels must be 1 or 3");
    if (image.pixels.size() != image.width * image.height * image.channels) {
        throw ShapeError("encode_pnm: pixel count does not match dimensions");
    }
    const std::string header = std::string(image.channels == 1 ? "P5" : "P6") + "\n" + std::to_string(image.width) +
                               " " + std::to_string(image.height) + "\n255\n";
    std::vector<std::byte> out;
    out.reserve(header.size() + image.pixels.size());
    for (char c : header) out.push_back(static_cast<std::byte>(c));
    for (auto p : image.pixels) out.push_back(static_cast<std::byte>(p));
    return out;
}

}  // namespace leuk::data
