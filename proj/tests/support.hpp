#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <string>

#include "leuk/core/rng.hpp"
#include "leuk/tensor/matrix.hpp"
#include "leuk/tensor/tensor3.hpp"

namespace leuk::test {

inline tensor::Matrix random_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols) {
    tensor::Matrix m(rows, cols);
    for (double& x : m.data()) x = rng.normal();
    return m;
}

inline tensor::Tensor3 random_tensor(SplitMix64& rng, tensor::Dims3 dims) {
    tensor::Tensor3 t(dims);
    for (double& x : t.data()) x = rng.normal();
    return t;
}

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() / (tag + "-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const noexcept { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace leuk::test
