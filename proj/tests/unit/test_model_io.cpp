#include <gtest/gtest.h>

#include <cstring>

#include "leuk/classifier/model_io.hpp"
#include "leuk/core/binary_io.hpp"
#include "leuk/core/crc32.hpp"
#include "leuk/core/error.hpp"
#include "support.hpp"

using namespace leuk;
using namespace leuk::classifier;
using leuk::tensor::Matrix;

namespace {

HosvdModel vector_model() {
    SplitMix64 rng(51);
    const Matrix x = test::random_matrix(rng, 6, 8);
    return train_vector_mode(x, std::vector<int>{0, 0, 0, 0, 1, 1, 1, 1}, 3);
}

HosvdModel matrix_model() {
    SplitMix64 rng(52);
    std::vector<Matrix> imgs;
    std::vector<int> labels;
    for (int i = 0; i < 8; ++i) {
        imgs.push_back(test::random_matrix(rng, 4, 5));
        labels.push_back(i < 4 ? 0 : 1);
    }
    return train_matrix_mode(imgs, labels, {3, 3, 2});
}

FormatErrorKind kind_of(const std::vector<std::byte>& bytes) {
    try {
        deserialize_model(bytes);
    } catch (const FormatError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no FormatError";
    return FormatErrorKind::malformed;
}

void refresh_crc(std::vector<std::byte>& bytes) {
    const auto crc = crc32(std::span<const std::byte>(bytes.data(), bytes.size() - 4));
    for (int i = 0; i < 4; ++i) bytes[bytes.size() - 4 + static_cast<std::size_t>(i)] = static_cast<std::byte>((crc >> (8 * i)) & 0xFF);
}

TEST(Crc32, KnownVector) {
    const char* text = "123456789";
    EXPECT_EQ(crc32(std::as_bytes(std::span<const char>(text, 9))), 0xCBF43926u);
}

TEST(ModelIo, RoundtripsBitwise) {
    for (const auto& m : {vector_model(), matrix_model()}) {
        const auto bytes = serialize_model(m);
        const auto back = deserialize_model(bytes);
        EXPECT_EQ(back.mode, m.mode);
        EXPECT_EQ(back.ranks, m.ranks);
        ASSERT_EQ(back.classes.size(), m.classes.size());
        for (std::size_t c = 0; c < m.classes.size(); ++c) {
            EXPECT_EQ(back.classes[c].label, m.classes[c].label);
            EXPECT_EQ(back.classes[c].basis, m.classes[c].basis);
            EXPECT_EQ(back.classes[c].basis_matrices, m.classes[c].basis_matrices);
        }
        EXPECT_EQ(serialize_model(back), bytes);
    }
}

TEST(ModelIo, HeaderLayout) {
    const auto bytes = serialize_model(vector_model());
    EXPECT_EQ(std::memcmp(bytes.data(), "HSVD", 4), 0);
    EXPECT_EQ(static_cast<int>(bytes[4]), 1);  // version, little-endian
    EXPECT_EQ(static_cast<int>(bytes[5]) | static_cast<int>(bytes[6]) | static_cast<int>(bytes[7]), 0);
    EXPECT_EQ(static_cast<int>(bytes[8]), 0);  // vector mode
    EXPECT_EQ(static_cast<int>(bytes[9]), 2);  // class count
}

TEST(ModelIo, DistinctCorruptionErrors) {
    const auto good = serialize_model(vector_model());
    auto magic = good;
    std::memcpy(magic.data(), "XXXX", 4);
    EXPECT_EQ(kind_of(magic), FormatErrorKind::bad_magic);

    auto version = good;
    version[4] = std::byte{255};
    EXPECT_EQ(kind_of(version), FormatErrorKind::unsupported_version);

    auto crc = good;
    crc[good.size() / 2] ^= std::byte{0x01};
    EXPECT_EQ(kind_of(crc), FormatErrorKind::checksum_mismatch);

    auto truncated = good;
    truncated.resize(good.size() - 17);
    EXPECT_EQ(kind_of(truncated), FormatErrorKind::truncated);
    EXPECT_EQ(kind_of(std::vector<std::byte>(good.begin(), good.begin() + 3)), FormatErrorKind::truncated);
}

TEST(ModelIo, MalformedPayloadWithValidCrc) {
    auto bytes = serialize_model(vector_model());
    bytes[8] = std::byte{7};  // unknown mode
    refresh_crc(bytes);
    EXPECT_EQ(kind_of(bytes), FormatErrorKind::malformed);
}

TEST(ModelIo, FileRoundtrip) {
    test::TempDir dir("model-io");
    const auto m = matrix_model();
    save_model(m, dir / "m.hsvd");
    EXPECT_EQ(serialize_model(load_model(dir / "m.hsvd")), serialize_model(m));
    EXPECT_THROW(load_model(dir / "missing.hsvd"), DataError);
}

}  // namespace
