#include "fracboost/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "fracboost/common.hpp"
#include "fracboost/error.hpp"

namespace fracboost {
namespace {

std::vector<std::string> split_line(std::string_view line) {
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    std::vector<std::string> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.emplace_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return cells;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        lines.push_back(text.substr(pos, eol - pos));
        pos = eol + 1;
    }
    return lines;
}

double parse_numeric_cell(const std::string& cell, std::size_t data_row, const std::string& column) {
    if (cell.empty()) {
        return missing_value();
    }
    double value = 0.0;
    try {
        value = parse_double(cell);
    } catch (const std::invalid_argument&) {
        throw DataError("csv: row " + std::to_string(data_row) + ", column '" + column +
                        "': cannot parse numeric value '" + cell + "'");
    }
    if (!std::isfinite(value)) {
        throw DataError("csv: row " + std::to_string(data_row) + ", column '" + column +
                        "': non-finite numeric value '" + cell + "'");
    }
    return value;
}

}  // namespace

bool Column::is_missing(std::size_t row) const {
    if (kind == ColumnKind::numeric) {
        return fracboost::is_missing(numeric[row]);
    }
    return categorical[row].empty();
}

Dataset::Dataset(FeatureSchema schema, std::vector<Column> feature_columns, std::vector<double> target)
    : schema_(std::move(schema)), columns_(std::move(feature_columns)), target_(std::move(target)) {
    if (columns_.size() != schema_.features().size()) {
        throw DataError("dataset: column count does not match schema");
    }
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i].kind != schema_.features()[i].kind) {
            throw DataError("dataset: column '" + schema_.features()[i].name + "' kind mismatch");
        }
        if (columns_[i].size() != target_.size()) {
            throw DataError("dataset: column '" + schema_.features()[i].name + "' length mismatch");
        }
    }
    for (double y : target_) {
        if (!std::isfinite(y)) {
            throw DataError("dataset: target contains a non-finite value");
        }
    }
}

const Column& Dataset::column(std::size_t feature_index) const {
    if (feature_index >= columns_.size()) {
        throw DataError("dataset: feature index out of range");
    }
    return columns_[feature_index];
}

const Column& Dataset::column(std::string_view name) const {
    const auto idx = schema_.find_feature(name);
    if (!idx) {
        throw DataError("dataset: unknown feature '" + std::string(name) + "'");
    }
    return columns_[*idx];
}

Dataset Dataset::select_rows(std::span<const std::size_t> indices) const {
    std::vector<Column> cols(columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        cols[c].kind = columns_[c].kind;
        if (cols[c].kind == ColumnKind::numeric) {
            cols[c].numeric.reserve(indices.size());
        } else {
            cols[c].categorical.reserve(indices.size());
        }
    }
    std::vector<double> target;
    target.reserve(indices.size());
    for (std::size_t idx : indices) {
        if (idx >= n_rows()) {
            throw DataError("dataset: row index out of range");
        }
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            if (columns_[c].kind == ColumnKind::numeric) {
                cols[c].numeric.push_back(columns_[c].numeric[idx]);
            } else {
                cols[c].categorical.push_back(columns_[c].categorical[idx]);
            }
        }
        target.push_back(target_[idx]);
    }
    return Dataset(schema_, std::move(cols), std::move(target));
}

LoadResult load_dataset(const std::string& csv_text, const FeatureSchema& schema,
                        const std::vector<std::string>& extra_numeric_columns) {
    const auto lines = split_lines(csv_text);
    if (lines.empty()) {
        throw DataError("csv: empty input");
    }
    const auto header = split_line(lines[0]);

    std::unordered_map<std::string, std::size_t> header_index;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (!header_index.emplace(header[i], i).second) {
            throw DataError("csv: duplicate header column '" + header[i] + "'");
        }
    }

    // Schema columns must all be present; name the first one that is not.
    for (const auto& col : schema.columns()) {
        if (!header_index.contains(col.name)) {
            throw DataError("csv: header is missing schema column '" + col.name + "'");
        }
    }
    // Every header column must be accounted for by the schema or the caller.
    for (const auto& name : header) {
        const bool in_schema = std::any_of(schema.columns().begin(), schema.columns().end(),
                                           [&](const ColumnSpec& c) { return c.name == name; });
        const bool is_extra = std::find(extra_numeric_columns.begin(), extra_numeric_columns.end(),
                                        name) != extra_numeric_columns.end();
        if (!in_schema && !is_extra) {
            throw DataError("csv: header column '" + name + "' is not declared in the schema");
        }
    }
    for (const auto& name : extra_numeric_columns) {
        if (!header_index.contains(name)) {
            throw DataError("csv: header is missing requested column '" + name + "'");
        }
    }

    const auto& feature_specs = schema.features();
    std::vector<std::size_t> feature_pos(feature_specs.size());
    for (std::size_t c = 0; c < feature_specs.size(); ++c) {
        feature_pos[c] = header_index.at(feature_specs[c].name);
    }
    const std::size_t target_pos = header_index.at(schema.target_name());

    std::vector<Column> columns(feature_specs.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        columns[c].kind = feature_specs[c].kind;
    }
    std::vector<double> target;
    LoadResult result;
    for (const auto& name : extra_numeric_columns) {
        result.extra_columns.emplace_back(name, std::vector<double>{});
    }

    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (lines[li].empty() || (lines[li].size() == 1 && lines[li][0] == '\r')) {
            continue;
        }
        const auto cells = split_line(lines[li]);
        const std::size_t data_row = li;  // 1-based data row (header is line 1)
        if (cells.size() != header.size()) {
            throw DataError("csv: row " + std::to_string(data_row) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
        }
        const double y = parse_numeric_cell(cells[target_pos], data_row, schema.target_name());
        if (is_missing(y)) {
            ++result.rows_dropped_missing_target;
            continue;
        }
        for (std::size_t c = 0; c < columns.size(); ++c) {
            const auto& cell = cells[feature_pos[c]];
            if (columns[c].kind == ColumnKind::numeric) {
                columns[c].numeric.push_back(
                    parse_numeric_cell(cell, data_row, feature_specs[c].name));
            } else {
                columns[c].categorical.push_back(cell);
            }
        }
        for (auto& [name, values] : result.extra_columns) {
            values.push_back(parse_numeric_cell(cells[header_index.at(name)], data_row, name));
        }
        target.push_back(y);
    }

    result.dataset = Dataset(schema, std::move(columns), std::move(target));
    return result;
}

std::string dataset_to_csv(const Dataset& dataset) {
    const auto& features = dataset.schema().features();
    std::string out;
    for (const auto& spec : features) {
        out += spec.name;
        out += ',';
    }
    out += dataset.schema().target_name();
    out += '\n';
    for (std::size_t r = 0; r < dataset.n_rows(); ++r) {
        for (std::size_t c = 0; c < features.size(); ++c) {
            const Column& col = dataset.column(c);
            if (!col.is_missing(r)) {
                out += col.kind == ColumnKind::numeric ? format_double(col.numeric[r])
                                                       : col.categorical[r];
            }
            out += ',';
        }
        out += format_double(dataset.target()[r]);
        out += '\n';
    }
    return out;
}

}  // namespace fracboost
