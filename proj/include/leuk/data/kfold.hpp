#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace leuk::data {

/// Stratified k-fold partition. Each class's indices are shuffled with
/// SplitMix64(seed) and dealt round-robin, continuing the deal position from
/// one class to the next so fold sizes also stay balanced. Folds are returned
/// with ascending indices.
///
/// Throws PreconditionError when k < 2 or some class has fewer than k samples.
std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed);

}  // namespace leuk::data
