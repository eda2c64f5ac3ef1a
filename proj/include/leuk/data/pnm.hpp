#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace leuk::data {

/// 8-bit image, row-major with interleaved channels.
struct ImageU8 {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t channels = 1;  ///< 1 (gray) or 3 (RGB)
    std::vector<std::uint8_t> pixels;

    friend bool operator==(const ImageU8&, const ImageU8&) = default;
};

/// Binary P5/P6 with maxval 255. Header tokens may be separated by any
/// whitespace and interleaved with '#' comments.
/// Throws FormatError: bad_magic, unsupported_maxval, truncated, malformed.
ImageU8 decode_pnm(std::span<const std::byte> bytes);

/// Minimal P5/P6 writer ("P5\n<w> <h>\n255\n" + pixels).
std::vector<std::byte> encode_pnm(const ImageU8& image);

}  // namespace leuk::data
