#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fracboost {

enum class ColumnKind { numeric, categorical };

// The five feature groups used to organize fracturing-job inputs.
enum class FeatureGroup { general, job, fluid, calculated_hf, geological };

struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
    FeatureGroup group = FeatureGroup::general;
};

std::string to_string(ColumnKind kind);
std::string to_string(FeatureGroup group);
ColumnKind parse_column_kind(std::string_view token);
FeatureGroup parse_feature_group(std::string_view token);

// Ordered column declarations plus the single numeric target.
// Immutable after construction and safe to share across threads.
class FeatureSchema {
public:
    FeatureSchema() = default;
    FeatureSchema(std::vector<ColumnSpec> columns, std::string target_name);

    const std::vector<ColumnSpec>& columns() const { return columns_; }
    const std::string& target_name() const { return target_name_; }
    const ColumnSpec& target() const;

    // Feature columns in schema order, target excluded.
    const std::vector<ColumnSpec>& features() const { return features_; }

    std::optional<std::size_t> find_feature(std::string_view name) const;

    // Re-emits the schema in the config format accepted by parse_schema.
    std::string to_config_text() const;

private:
    std::vector<ColumnSpec> columns_;
    std::string target_name_;
    std::vector<ColumnSpec> features_;
};

// Config format: one column per line, `name,kind,group` for features and
// `name,kind,group,target` for the target. Blank lines and lines starting
// with '#' are ignored.
FeatureSchema parse_schema(const std::string& config_text);

}  // namespace fracboost
