#include "fracboost/encoding.hpp"

#include <algorithm>
#include <set>

#include "fracboost/common.hpp"
#include "fracboost/error.hpp"

namespace fracboost {

const std::vector<std::string>* EncodingMap::find(std::string_view column_name) const {
    for (const auto& [name, categories] : columns) {
        if (name == column_name) {
            return &categories;
        }
    }
    return nullptr;
}

EncodingMap fit_encoding(const Dataset& dataset) {
    EncodingMap map;
    const auto& features = dataset.schema().features();
    for (std::size_t c = 0; c < features.size(); ++c) {
        if (features[c].kind != ColumnKind::categorical) {
            continue;
        }
        std::set<std::string> distinct;
        for (const auto& cell : dataset.column(c).categorical) {
            if (!cell.empty()) {
                distinct.insert(cell);
            }
        }
        map.columns.emplace_back(features[c].name,
                                 std::vector<std::string>(distinct.begin(), distinct.end()));
    }
    return map;
}

std::vector<std::string> high_cardinality_warnings(const Dataset& dataset) {
    std::vector<std::string> warnings;
    const std::size_t limit = dataset.n_rows() / 10;
    const auto& features = dataset.schema().features();
    for (std::size_t c = 0; c < features.size(); ++c) {
        if (features[c].kind != ColumnKind::categorical) {
            continue;
        }
        std::set<std::string> distinct;
        for (const auto& cell : dataset.column(c).categorical) {
            if (!cell.empty()) {
                distinct.insert(cell);
            }
        }
        if (distinct.size() > limit) {
            warnings.push_back("column '" + features[c].name + "' has " +
                               std::to_string(distinct.size()) + " categories over " +
                               std::to_string(dataset.n_rows()) +
                               " rows; one-hot width may explode");
        }
    }
    return warnings;
}

EncodedMatrix::EncodedMatrix(std::size_t n_rows, std::vector<std::string> feature_names,
                             EncodingMap encoding)
    : n_rows_(n_rows),
      feature_names_(std::move(feature_names)),
      encoding_(std::move(encoding)),
      values_(n_rows * feature_names_.size(), 0.0) {}

std::vector<std::string> encoded_feature_names(const FeatureSchema& schema, const EncodingMap& map) {
    std::vector<std::string> names;
    for (const auto& spec : schema.features()) {
        if (spec.kind == ColumnKind::numeric) {
            names.push_back(spec.name);
            continue;
        }
        const auto* categories = map.find(spec.name);
        if (categories == nullptr) {
            throw DataError("encode: encoding map is missing column '" + spec.name + "'");
        }
        for (const auto& category : *categories) {
            names.push_back(spec.name + "=" + category);
        }
    }
    return names;
}

EncodedMatrix encode(const Dataset& dataset, const EncodingMap& map) {
    auto names = encoded_feature_names(dataset.schema(), map);
    EncodedMatrix matrix(dataset.n_rows(), std::move(names), map);

    const auto& features = dataset.schema().features();
    std::size_t out = 0;
    for (std::size_t c = 0; c < features.size(); ++c) {
        const Column& col = dataset.column(c);
        if (features[c].kind == ColumnKind::numeric) {
            for (std::size_t r = 0; r < dataset.n_rows(); ++r) {
                matrix.at(r, out) = col.numeric[r];
            }
            ++out;
            continue;
        }
        const auto& categories = *map.find(features[c].name);
        for (std::size_t r = 0; r < dataset.n_rows(); ++r) {
            const auto& cell = col.categorical[r];
            if (cell.empty()) {
                continue;  // missing: all-zero block
            }
            const auto it = std::lower_bound(categories.begin(), categories.end(), cell);
            if (it != categories.end() && *it == cell) {
                matrix.at(r, out + static_cast<std::size_t>(it - categories.begin())) = 1.0;
            }
            // unseen category: all-zero block
        }
        out += categories.size();
    }
    return matrix;
}

}  // namespace fracboost
