#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fracboost {

struct TrainTestSplit {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

// Deterministic disjoint partition of 0..n-1; test size is round(n * fraction)
// clamped to [1, n-1]. Both index lists come back sorted ascending.
TrainTestSplit random_split(std::size_t n, double test_fraction, std::uint64_t seed);

struct Fold {
    std::vector<std::size_t> train;
    std::vector<std::size_t> validation;
};

// k folds with validation sets disjoint, exhaustive, and sized within one of
// each other. Deterministic given (n, k, seed).
std::vector<Fold> kfold_indices(std::size_t n, std::size_t k, std::uint64_t seed);

}  // namespace fracboost
