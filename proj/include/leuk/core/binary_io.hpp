#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace leuk {

/// Little-endian serializer used by the model and network containers.
class ByteWriter {
public:
    void bytes(std::span<const std::byte> data);
    void magic(std::string_view four_chars);
    void u8(std::uint8_t v);
    void u32(std::uint32_t v);
    void u64(std::uint64_t v);
    void f64(double v);
    void f64s(std::span<const double> values);

    /// Appends the CRC32 of everything written so far.
    void finish_with_crc();

    const std::vector<std::byte>& buffer() const noexcept { return buf_; }
    std::vector<std::byte> take() && noexcept { return std::move(buf_); }

private:
    std::vector<std::byte> buf_;
};

/// Bounds-checked little-endian reader; running past the end throws
/// FormatError(truncated).
class ByteReader {
public:
    explicit ByteReader(std::span<const std::byte> data) noexcept : data_(data) {}

    std::array<char, 4> magic();
    std::uint8_t u8();
    std::uint32_t u32();
    std::uint64_t u64();
    double f64();
    std::vector<double> f64s(std::size_t count);

    std::size_t position() const noexcept { return pos_; }
    std::size_t remaining() const noexcept { return data_.size() - pos_; }

private:
    std::span<const std::byte> take(std::size_t n);

    std::span<const std::byte> data_;
    std::size_t pos_ = 0;
};

/// Checks the trailing CRC32 of a container and returns the body without it.
/// Throws FormatError(truncated) when shorter than 4 bytes and
/// FormatError(checksum_mismatch) on mismatch.
std::span<const std::byte> verify_crc_trailer(std::span<const std::byte> file);

std::vector<std::byte> read_file_bytes(const std::filesystem::path& path);
void write_file_bytes(const std::filesystem::path& path, std::span<const std::byte> data);

}  // namespace leuk
