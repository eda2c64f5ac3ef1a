#include "leuk/data/kfold.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "leuk/core/error.hpp"
#include "leuk/core/rng.hpp"

namespace leuk::data {

std::vector<std::vector<std::size_t>> stratified_kfold(std::span<const int> labels, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw PreconditionError("stratified_kfold: k must be at least 2");
    std::map<int, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < labels.size(); ++i) by_class[labels[i]].push_back(i);
    for (const auto& [label, members] : by_class) {
        if (members.size() < k) {
            throw PreconditionError("stratified_kfold: class " + std::to_string(label) + " has " +
                                    std::to_string(members.size()) + " samples, fewer than k = " + std::to_string(k));
        }
    }

    SplitMix64 rng(seed);
    std::vector<std::vector<std::size_t>> folds(k);
    std::size_t deal = 0;
    for (auto& [label, members] : by_class) {
        rng.shuffle(std::span<std::size_t>(members));
        for (std::size_t idx : members) {
            folds[deal].push_back(idx);
            deal = (deal + 1) % k;
        }
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

}  // namespace leuk::data
