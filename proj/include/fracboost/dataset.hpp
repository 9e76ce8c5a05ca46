#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "fracboost/schema.hpp"

namespace fracboost {

// One feature column. Numeric columns mark missing cells with NaN,
// categorical columns with the empty string (the CSV dialect reserves the
// empty cell for missing, so no real category can collide).
struct Column {
    ColumnKind kind = ColumnKind::numeric;
    std::vector<double> numeric;
    std::vector<std::string> categorical;

    std::size_t size() const {
        return kind == ColumnKind::numeric ? numeric.size() : categorical.size();
    }
    bool is_missing(std::size_t row) const;
};

// Column-oriented tabular store. Immutable after construction; safe to share
// across concurrent readers.
class Dataset {
public:
    Dataset() = default;
    Dataset(FeatureSchema schema, std::vector<Column> feature_columns, std::vector<double> target);

    const FeatureSchema& schema() const { return schema_; }
    std::size_t n_rows() const { return target_.size(); }
    std::size_t n_feature_columns() const { return columns_.size(); }

    const Column& column(std::size_t feature_index) const;
    const Column& column(std::string_view name) const;
    const std::vector<double>& target() const { return target_; }

    Dataset select_rows(std::span<const std::size_t> indices) const;

private:
    FeatureSchema schema_;
    std::vector<Column> columns_;  // parallel to schema_.features()
    std::vector<double> target_;
};

struct LoadResult {
    Dataset dataset;
    std::size_t rows_dropped_missing_target = 0;
    // Extra numeric columns requested by name (e.g. a baseline-prediction
    // column that is not a model feature); row-aligned with the dataset.
    std::vector<std::pair<std::string, std::vector<double>>> extra_columns;
};

// CSV dialect: comma separator, first line is the header, empty cell means
// missing, no quoting. Header must contain every schema column (any order);
// columns not in the schema are allowed only when listed in
// extra_numeric_columns. Rows with a missing target are dropped and counted.
LoadResult load_dataset(const std::string& csv_text, const FeatureSchema& schema,
                        const std::vector<std::string>& extra_numeric_columns = {});

// Serializes a dataset back to the CSV dialect above (used by the synthetic
// generator); numeric cells use exact round-trip decimal text.
std::string dataset_to_csv(const Dataset& dataset);

}  // namespace fracboost
