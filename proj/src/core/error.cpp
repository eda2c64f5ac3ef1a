#include "leuk/core/error.hpp"

namespace leuk {

const char* to_string(FormatErrorKind kind) noexcept {
    switch (kind) {
        case FormatErrorKind::bad_magic: return "bad magic";
        case FormatErrorKind::unsupported_version: return "unsupported version";
        case FormatErrorKind::truncated: return "truncated";
        case FormatErrorKind::checksum_mismatch: return "checksum mismatch";
        case FormatErrorKind::unsupported_maxval: return "unsupported maxval";
        case FormatErrorKind::malformed: return "malformed";
    }
    return "unknown";
}

}  // namespace leuk
