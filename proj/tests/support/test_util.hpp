#pragma once

#include <filesystem>
#include <unistd.h>
#include <string>
#include <vector>

#include "fracboost/common.hpp"
#include "fracboost/encoding.hpp"
#include "fracboost/loss.hpp"
#include "fracboost/rng.hpp"

namespace testutil {

// Unique scratch directory under the system temp root, removed on scope exit.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        dir_ = std::filesystem::temp_directory_path() /
               ("fracboost_" + tag + "_" + std::to_string(++counter) + "_" +
                std::to_string(static_cast<long>(::getpid())));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    const std::filesystem::path& path() const { return dir_; }

private:
    std::filesystem::path dir_;
};

// Bare matrix with generated feature names and an empty encoding map; cells
// are filled by the caller.
inline fracboost::EncodedMatrix make_matrix(std::size_t n_rows, std::size_t n_features) {
    std::vector<std::string> names;
    for (std::size_t f = 0; f < n_features; ++f) {
        names.push_back("f" + std::to_string(f));
    }
    return fracboost::EncodedMatrix(n_rows, std::move(names), {});
}

struct RandomInstance {
    fracboost::EncodedMatrix matrix;
    std::vector<double> targets;
};

// Random instance mixing continuous and coarse (duplicate-heavy) features
// plus missing cells; targets are continuous so split-quality ties between
// distinct partitions do not occur.
inline RandomInstance random_instance(std::uint64_t seed, std::size_t n_rows,
                                      std::size_t n_features, double missing_rate) {
    fracboost::SplitMix64 rng(seed);
    RandomInstance inst{make_matrix(n_rows, n_features), {}};
    for (std::size_t f = 0; f < n_features; ++f) {
        const bool coarse = rng.uniform01() < 0.4;
        for (std::size_t r = 0; r < n_rows; ++r) {
            if (rng.uniform01() < missing_rate) {
                inst.matrix.at(r, f) = fracboost::missing_value();
            } else if (coarse) {
                inst.matrix.at(r, f) = static_cast<double>(rng.uniform_below(5));
            } else {
                inst.matrix.at(r, f) = 10.0 * rng.uniform01();
            }
        }
    }
    inst.targets.resize(n_rows);
    for (std::size_t r = 0; r < n_rows; ++r) {
        inst.targets[r] = 3.0 * rng.normal();
    }
    return inst;
}

// Central finite difference of -loss w.r.t. the prediction.
inline double numeric_negative_gradient(const fracboost::LossFunction& loss, double y, double f,
                                        double step) {
    return (loss.evaluate(y, f - step) - loss.evaluate(y, f + step)) / (2.0 * step);
}

}  // namespace testutil
