#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fracboost/dataset.hpp"

namespace fracboost {

// Per categorical column (schema order): the sorted list of distinct
// non-missing categories seen at fit time. Lexicographic order keeps the
// encoded column layout identical across runs and platforms.
struct EncodingMap {
    std::vector<std::pair<std::string, std::vector<std::string>>> columns;

    const std::vector<std::string>* find(std::string_view column_name) const;
};

EncodingMap fit_encoding(const Dataset& dataset);

// Columns whose cardinality exceeds n/10 blow up the encoded width; they are
// reported, not rejected.
std::vector<std::string> high_cardinality_warnings(const Dataset& dataset);

// Dense row-major matrix with NaN marking missing numeric cells. One-hot
// blocks are all-zero for missing or unseen categories.
class EncodedMatrix {
public:
    EncodedMatrix() = default;
    EncodedMatrix(std::size_t n_rows, std::vector<std::string> feature_names, EncodingMap encoding);

    std::size_t n_rows() const { return n_rows_; }
    std::size_t n_features() const { return feature_names_.size(); }

    double at(std::size_t row, std::size_t feature) const {
        return values_[row * n_features() + feature];
    }
    double& at(std::size_t row, std::size_t feature) {
        return values_[row * n_features() + feature];
    }
    std::span<const double> row(std::size_t r) const {
        return {values_.data() + r * n_features(), n_features()};
    }

    const std::vector<std::string>& feature_names() const { return feature_names_; }
    const EncodingMap& encoding() const { return encoding_; }

private:
    std::size_t n_rows_ = 0;
    std::vector<std::string> feature_names_;
    EncodingMap encoding_;
    std::vector<double> values_;
};

// Derived names: the original name for numeric columns, "col=category" for
// one-hot indicators. Shared by encode() and the model loader.
std::vector<std::string> encoded_feature_names(const FeatureSchema& schema, const EncodingMap& map);

EncodedMatrix encode(const Dataset& dataset, const EncodingMap& map);

}  // namespace fracboost
