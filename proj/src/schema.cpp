#include "fracboost/schema.hpp"

#include <algorithm>
#include <unordered_set>

#include "fracboost/error.hpp"

namespace fracboost {
namespace {

std::string trim(std::string_view s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string_view::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_fields(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            fields.push_back(trim(line.substr(start, i - start)));
            start = i + 1;
        }
    }
    return fields;
}

}  // namespace

std::string to_string(ColumnKind kind) {
    return kind == ColumnKind::numeric ? "numeric" : "categorical";
}

std::string to_string(FeatureGroup group) {
    switch (group) {
        case FeatureGroup::general: return "general";
        case FeatureGroup::job: return "job";
        case FeatureGroup::fluid: return "fluid";
        case FeatureGroup::calculated_hf: return "calculated_hf";
        case FeatureGroup::geological: return "geological";
    }
    return "general";
}

ColumnKind parse_column_kind(std::string_view token) {
    if (token == "numeric") {
        return ColumnKind::numeric;
    }
    if (token == "categorical") {
        return ColumnKind::categorical;
    }
    throw SchemaError("schema: unknown column kind '" + std::string(token) + "'");
}

FeatureGroup parse_feature_group(std::string_view token) {
    if (token == "general") return FeatureGroup::general;
    if (token == "job") return FeatureGroup::job;
    if (token == "fluid") return FeatureGroup::fluid;
    if (token == "calculated_hf") return FeatureGroup::calculated_hf;
    if (token == "geological") return FeatureGroup::geological;
    throw SchemaError("schema: unknown feature group '" + std::string(token) + "'");
}

FeatureSchema::FeatureSchema(std::vector<ColumnSpec> columns, std::string target_name)
    : columns_(std::move(columns)), target_name_(std::move(target_name)) {
    if (columns_.empty()) {
        throw SchemaError("schema: no columns declared");
    }
    std::unordered_set<std::string_view> seen;
    for (const auto& col : columns_) {
        if (col.name.empty()) {
            throw SchemaError("schema: empty column name");
        }
        if (!seen.insert(col.name).second) {
            throw SchemaError("schema: duplicate column name '" + col.name + "'");
        }
    }
    const auto it = std::find_if(columns_.begin(), columns_.end(),
                                 [&](const ColumnSpec& c) { return c.name == target_name_; });
    if (target_name_.empty() || it == columns_.end()) {
        throw SchemaError("schema: missing target declaration");
    }
    if (it->kind != ColumnKind::numeric) {
        throw SchemaError("schema: target column '" + target_name_ + "' must be numeric");
    }
    features_.reserve(columns_.size() - 1);
    for (const auto& col : columns_) {
        if (col.name != target_name_) {
            features_.push_back(col);
        }
    }
}

const ColumnSpec& FeatureSchema::target() const {
    for (const auto& col : columns_) {
        if (col.name == target_name_) {
            return col;
        }
    }
    throw SchemaError("schema: missing target declaration");
}

std::optional<std::size_t> FeatureSchema::find_feature(std::string_view name) const {
    for (std::size_t i = 0; i < features_.size(); ++i) {
        if (features_[i].name == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::string FeatureSchema::to_config_text() const {
    std::string out;
    for (const auto& col : columns_) {
        out += col.name;
        out += ',';
        out += to_string(col.kind);
        out += ',';
        out += to_string(col.group);
        if (col.name == target_name_) {
            out += ",target";
        }
        out += '\n';
    }
    return out;
}

FeatureSchema parse_schema(const std::string& config_text) {
    std::vector<ColumnSpec> columns;
    std::string target_name;

    std::size_t pos = 0;
    while (pos <= config_text.size()) {
        const std::size_t eol = std::min(config_text.find('\n', pos), config_text.size());
        const std::string line = trim(std::string_view(config_text).substr(pos, eol - pos));
        pos = eol + 1;
        if (line.empty() || line.front() == '#') {
            continue;
        }
        auto fields = split_fields(line);
        if (fields.size() < 3 || fields.size() > 4) {
            throw SchemaError("schema: malformed line '" + line + "' (expected name,kind,group[,target])");
        }
        ColumnSpec spec;
        spec.name = fields[0];
        spec.kind = parse_column_kind(fields[1]);
        spec.group = parse_feature_group(fields[2]);
        if (fields.size() == 4) {
            if (fields[3] != "target") {
                throw SchemaError("schema: unknown trailing token '" + fields[3] + "'");
            }
            if (!target_name.empty()) {
                throw SchemaError("schema: more than one target declared ('" + target_name +
                                  "' and '" + spec.name + "')");
            }
            target_name = spec.name;
        }
        columns.push_back(std::move(spec));
    }
    return FeatureSchema(std::move(columns), std::move(target_name));
}

}  // namespace fracboost
