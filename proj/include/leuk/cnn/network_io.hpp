#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <vector>

#include "leuk/cnn/network.hpp"

namespace leuk::cnn {

inline constexpr std::uint32_t kNetworkFormatVersion = 1;

// Container layout (little-endian):
//   "HCNN" | u32 version | u64 init seed
//   u32 side | u32 kernel | u32 conv1 | u32 conv2 | u32 hidden | u32 classes
//   u32 layer count (4)
//   per layer: u8 kind (0 conv, 1 dense) | u32 dims[4] | u64 payload bytes |
//              f64 weights then f64 biases
//   u32 CRC32 of all preceding bytes
// Conv dims are (kh, kw, in, out); dense dims are (in, out, 0, 0).

std::vector<std::byte> serialize_network(const Network& net);
Network deserialize_network(std::span<const std::byte> bytes);

void save_network(const Network& net, const std::filesystem::path& path);
Network load_network(const std::filesystem::path& path);

}  // namespace leuk::cnn
