#include "leuk/core/crc32.hpp"

#include <zlib.h>

namespace leuk {

std::uint32_t crc32(std::span<const std::byte> bytes) noexcept {
    uLong crc = ::crc32(0L, Z_NULL, 0);
    const auto* data = reinterpret_cast<const Bytef*>(bytes.data());
    std::size_t remaining = bytes.size();
    // zlib takes uInt lengths
    while (remaining > 0) {
        const auto chunk = static_cast<uInt>(remaining > (1u << 30) ? (1u << 30) : remaining);
        crc = ::crc32(crc, data, chunk);
        data += chunk;
        remaining -= chunk;
    }
    return static_cast<std::uint32_t>(crc);
}

}  // namespace leuk
