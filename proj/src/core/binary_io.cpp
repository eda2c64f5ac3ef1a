#include "leuk/core/binary_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "leuk/core/crc32.hpp"
#include "leuk/core/error.hpp"

namespace leuk {

void ByteWriter::bytes(std::span<const std::byte> data) {
    buf_.insert(buf_.end(), data.begin(), data.end());
}

void ByteWriter::magic(std::string_view four_chars) {
    for (char c : four_chars.substr(0, 4)) buf_.push_back(static_cast<std::byte>(c));
}

void ByteWriter::u8(std::uint8_t v) { buf_.push_back(static_cast<std::byte>(v)); }

void ByteWriter::u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFFu));
}

void ByteWriter::u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::byte>((v >> (8 * i)) & 0xFFu));
}

void ByteWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void ByteWriter::f64s(std::span<const double> values) {
    buf_.reserve(buf_.size() + 8 * values.size());
    for (double v : values) f64(v);
}

void ByteWriter::finish_with_crc() { u32(crc32(buf_)); }

std::span<const std::byte> ByteReader::take(std::size_t n) {
    if (n > remaining()) {
        throw FormatError(FormatErrorKind::truncated,
                          "need " + std::to_string(n) + " bytes at offset " + std::to_string(pos_) +
                              ", have " + std::to_string(remaining()));
    }
    auto out = data_.subspan(pos_, n);
    pos_ += n;
    return out;
}

std::array<char, 4> ByteReader::magic() {
    auto raw = take(4);
    std::array<char, 4> out{};
    std::memcpy(out.data(), raw.data(), 4);
    return out;
}

std::uint8_t ByteReader::u8() { return static_cast<std::uint8_t>(take(1)[0]); }

std::uint32_t ByteReader::u32() {
    auto raw = take(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(raw[i]) << (8 * i);
    return v;
}

std::uint64_t ByteReader::u64() {
    auto raw = take(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(raw[i]) << (8 * i);
    return v;
}

double ByteReader::f64() { return std::bit_cast<double>(u64()); }

std::vector<double> ByteReader::f64s(std::size_t count) {
    if (count > remaining() / 8) {
        throw FormatError(FormatErrorKind::truncated,
                          "payload of " + std::to_string(count) + " doubles exceeds file size");
    }
    std::vector<double> out(count);
    for (auto& v : out) v = f64();
    return out;
}

std::span<const std::byte> verify_crc_trailer(std::span<const std::byte> file) {
    if (file.size() < 4) throw FormatError(FormatErrorKind::truncated, "file shorter than CRC trailer");
    auto body = file.first(file.size() - 4);
    ByteReader trailer(file.last(4));
    const std::uint32_t stored = trailer.u32();
    const std::uint32_t actual = crc32(body);
    if (stored != actual) {
        throw FormatError(FormatErrorKind::checksum_mismatch, "stored CRC32 does not match contents");
    }
    return body;
}

std::vector<std::byte> read_file_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    in.seekg(0, std::ios::end);
    const auto size = static_cast<std::size_t>(in.tellg());
    in.seekg(0, std::ios::beg);
    std::vector<std::byte> out(size);
    if (size > 0 && !in.read(reinterpret_cast<char*>(out.data()), static_cast<std::streamsize>(size))) {
        throw DataError("failed reading " + path.string());
    }
    return out;
}

void write_file_bytes(const std::filesystem::path& path, std::span<const std::byte> data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw DataError("failed writing " + path.string());
}

}  // namespace leuk
