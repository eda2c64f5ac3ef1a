#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "leuk/classifier/hosvd_model.hpp"

namespace leuk::classifier {

// Container layout (little-endian):
//   "HSVD" | u32 version | u8 mode | u32 class count
//   per class: u32 label | shape header | u64 payload bytes | f64 payload
//   u32 CRC32 of all preceding bytes
// Shape header, vector mode: u32 d, u32 k (payload: d×k basis, row-major).
// Matrix mode: u32 h, u32 w, u32 k1, u32 k2, u32 k3 requested, u32 k3 kept
// (payload: k3-kept basis matrices h×w, row-major, one after another).

std::vector<std::byte> serialize_model(const HosvdModel& model);

/// Throws FormatError with kind bad_magic, unsupported_version, truncated,
/// checksum_mismatch or malformed.
HosvdModel deserialize_model(std::span<const std::byte> bytes);

void save_model(const HosvdModel& model, const std::filesystem::path& path);
HosvdModel load_model(const std::filesystem::path& path);

}  // namespace leuk::classifier
