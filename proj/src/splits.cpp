#include "fracboost/splits.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fracboost/rng.hpp"

namespace fracboost {
namespace {

std::vector<std::size_t> shuffled_indices(std::size_t n, std::uint64_t seed) {
    std::vector<std::size_t> indices(n);
    std::iota(indices.begin(), indices.end(), std::size_t{0});
    SplitMix64 rng(seed);
    fisher_yates_shuffle(indices, rng);
    return indices;
}

}  // namespace

TrainTestSplit random_split(std::size_t n, double test_fraction, std::uint64_t seed) {
    if (n < 2) {
        throw std::invalid_argument("random_split: need at least 2 rows");
    }
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw std::invalid_argument("random_split: test_fraction must be in (0, 1)");
    }
    auto test_size = static_cast<std::size_t>(
        std::llround(static_cast<double>(n) * test_fraction));
    test_size = std::clamp<std::size_t>(test_size, 1, n - 1);

    const auto indices = shuffled_indices(n, seed);
    TrainTestSplit split;
    split.test.assign(indices.begin(), indices.begin() + static_cast<std::ptrdiff_t>(test_size));
    split.train.assign(indices.begin() + static_cast<std::ptrdiff_t>(test_size), indices.end());
    std::sort(split.test.begin(), split.test.end());
    std::sort(split.train.begin(), split.train.end());
    return split;
}

std::vector<Fold> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2 || k > n) {
        throw std::invalid_argument("kfold_indices: k must satisfy 2 <= k <= n");
    }
    const auto indices = shuffled_indices(n, seed);

    std::vector<Fold> folds(k);
    const std::size_t base = n / k;
    const std::size_t remainder = n % k;
    std::size_t start = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t size = base + (f < remainder ? 1 : 0);
        folds[f].validation.assign(indices.begin() + static_cast<std::ptrdiff_t>(start),
                                   indices.begin() + static_cast<std::ptrdiff_t>(start + size));
        folds[f].train.reserve(n - size);
        folds[f].train.insert(folds[f].train.end(), indices.begin(),
                              indices.begin() + static_cast<std::ptrdiff_t>(start));
        folds[f].train.insert(folds[f].train.end(),
                              indices.begin() + static_cast<std::ptrdiff_t>(start + size),
                              indices.end());
        std::sort(folds[f].validation.begin(), folds[f].validation.end());
        std::sort(folds[f].train.begin(), folds[f].train.end());
        start += size;
    }
    return folds;
}

}  // namespace fracboost
