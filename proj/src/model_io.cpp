#include "fracboost/model_io.hpp"

#include <functional>
#include <vector>

#include "fracboost/common.hpp"
#include "fracboost/error.hpp"
#include "fracboost/io_util.hpp"

namespace fracboost {
namespace {

constexpr const char* kMagic = "fracboost-model";
constexpr int kVersion = 1;

void write_tree(std::string& out, const RegressionTree& tree) {
    out += "nodes " + std::to_string(tree.nodes().size()) + "\n";
    const auto& nodes = tree.nodes();
    std::function<void(std::size_t)> emit = [&](std::size_t idx) {
        const auto& node = nodes[idx];
        if (node.is_leaf()) {
            out += "leaf " + format_double(node.value) + "\n";
            return;
        }
        out += "split " + std::to_string(node.feature) + " " + format_double(node.threshold) +
               " " + (node.missing_goes_left ? "1" : "0") + "\n";
        emit(static_cast<std::size_t>(node.left));
        emit(static_cast<std::size_t>(node.right));
    };
    emit(0);
}

// Sequential line reader with context-carrying errors.
class LineReader {
public:
    explicit LineReader(const std::string& text) : text_(text) {}

    std::string_view next(const char* context) {
        while (pos_ < text_.size()) {
            std::size_t eol = std::min(text_.find('\n', pos_), text_.size());
            std::string_view line(text_.data() + pos_, eol - pos_);
            pos_ = eol + 1;
            if (!line.empty() && line.back() == '\r') {
                line.remove_suffix(1);
            }
            ++line_number_;
            return line;
        }
        throw DataError(std::string("model file: unexpected end of file while reading ") + context);
    }

    std::size_t line_number() const { return line_number_; }

private:
    const std::string& text_;
    std::size_t pos_ = 0;
    std::size_t line_number_ = 0;
};

// Splits on single spaces; category payload lines are consumed raw instead.
std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ' ') {
            if (i > start) {
                out.push_back(line.substr(start, i - start));
            }
            start = i + 1;
        }
    }
    return out;
}

std::vector<std::string_view> expect(LineReader& reader, const char* keyword,
                                     std::size_t n_tokens) {
    const auto line = reader.next(keyword);
    const auto toks = tokens(line);
    if (toks.empty() || toks[0] != keyword || toks.size() != n_tokens) {
        throw DataError("model file: line " + std::to_string(reader.line_number()) +
                        ": expected '" + keyword + "' record, got '" + std::string(line) + "'");
    }
    return toks;
}

RegressionTree read_tree(LineReader& reader, std::size_t n_nodes, std::size_t n_features) {
    std::vector<RegressionTree::Node> nodes;
    nodes.reserve(n_nodes);
    std::function<std::int32_t()> read_node = [&]() -> std::int32_t {
        const auto line = reader.next("tree node");
        const auto toks = tokens(line);
        const auto idx = static_cast<std::int32_t>(nodes.size());
        if (nodes.size() >= n_nodes) {
            throw DataError("model file: line " + std::to_string(reader.line_number()) +
                            ": more tree nodes than declared");
        }
        if (!toks.empty() && toks[0] == "leaf" && toks.size() == 2) {
            RegressionTree::Node node;
            node.value = parse_double(toks[1]);
            nodes.push_back(node);
            return idx;
        }
        if (!toks.empty() && toks[0] == "split" && toks.size() == 4) {
            RegressionTree::Node node;
            node.feature = static_cast<std::int32_t>(parse_uint(toks[1]));
            node.threshold = parse_double(toks[2]);
            node.missing_goes_left = toks[3] == "1";
            nodes.push_back(node);
            const auto left = read_node();
            const auto right = read_node();
            nodes[static_cast<std::size_t>(idx)].left = left;
            nodes[static_cast<std::size_t>(idx)].right = right;
            return idx;
        }
        throw DataError("model file: line " + std::to_string(reader.line_number()) +
                        ": malformed tree node '" + std::string(line) + "'");
    };
    read_node();
    if (nodes.size() != n_nodes) {
        throw DataError("model file: tree declared " + std::to_string(n_nodes) + " nodes, found " +
                        std::to_string(nodes.size()));
    }
    return RegressionTree::from_nodes(std::move(nodes), n_features);
}

}  // namespace

std::string serialize_model(const BoostedModel& model) {
    const FeatureSchema& schema = model.schema();

    std::string out;
    out += std::string(kMagic) + " " + std::to_string(kVersion) + "\n";
    out += "loss " + to_string(model.loss_kind()) + "\n";
    out += "shrinkage " + format_double(model.shrinkage()) + "\n";
    out += "base " + format_double(model.base_prediction()) + "\n";
    out += "n_features " + std::to_string(model.n_features()) + "\n";

    const std::string schema_text = schema.to_config_text();
    out += "schema " + std::to_string(schema.columns().size()) + "\n";
    out += schema_text;

    out += "encoding " + std::to_string(model.encoding().columns.size()) + "\n";
    for (const auto& [name, categories] : model.encoding().columns) {
        out += "column " + name + " " + std::to_string(categories.size()) + "\n";
        for (const auto& category : categories) {
            out += category;
            out += '\n';
        }
    }

    out += "stages " + std::to_string(model.stages().size()) + "\n";
    for (const auto& stage : model.stages()) {
        out += "stage " + format_double(stage.step_size) + "\n";
        write_tree(out, stage.tree);
    }
    out += "end\n";
    return out;
}

BoostedModel deserialize_model(const std::string& text) {
    LineReader reader(text);

    {
        const auto toks = tokens(reader.next("header"));
        if (toks.size() != 2 || toks[0] != kMagic) {
            throw DataError("model file: bad header (not a fracboost model)");
        }
        if (parse_uint(toks[1]) != static_cast<std::uint64_t>(kVersion)) {
            throw DataError("model file: unsupported format version '" + std::string(toks[1]) + "'");
        }
    }
    const LossKind loss = parse_loss_kind(expect(reader, "loss", 2)[1]);
    const double shrinkage = parse_double(expect(reader, "shrinkage", 2)[1]);
    const double base = parse_double(expect(reader, "base", 2)[1]);
    const auto n_features = static_cast<std::size_t>(parse_uint(expect(reader, "n_features", 2)[1]));

    const auto n_schema_lines = static_cast<std::size_t>(parse_uint(expect(reader, "schema", 2)[1]));
    std::string schema_text;
    for (std::size_t i = 0; i < n_schema_lines; ++i) {
        schema_text += std::string(reader.next("schema line"));
        schema_text += '\n';
    }
    FeatureSchema schema = parse_schema(schema_text);

    EncodingMap encoding;
    const auto n_encoded = static_cast<std::size_t>(parse_uint(expect(reader, "encoding", 2)[1]));
    for (std::size_t c = 0; c < n_encoded; ++c) {
        const auto toks = expect(reader, "column", 3);
        const auto n_categories = static_cast<std::size_t>(parse_uint(toks[2]));
        std::vector<std::string> categories;
        categories.reserve(n_categories);
        for (std::size_t i = 0; i < n_categories; ++i) {
            categories.emplace_back(reader.next("category"));
        }
        encoding.columns.emplace_back(std::string(toks[1]), std::move(categories));
    }

    auto feature_names = encoded_feature_names(schema, encoding);
    if (feature_names.size() != n_features) {
        throw DataError("model file: n_features " + std::to_string(n_features) +
                        " does not match schema/encoding width " +
                        std::to_string(feature_names.size()));
    }

    const auto n_stages = static_cast<std::size_t>(parse_uint(expect(reader, "stages", 2)[1]));
    std::vector<BoostedModel::Stage> stages;
    stages.reserve(n_stages);
    for (std::size_t s = 0; s < n_stages; ++s) {
        const double step = parse_double(expect(reader, "stage", 2)[1]);
        const auto n_nodes = static_cast<std::size_t>(parse_uint(expect(reader, "nodes", 2)[1]));
        stages.push_back({step, read_tree(reader, n_nodes, n_features)});
    }
    expect(reader, "end", 1);

    BoostedModel model(base, shrinkage, loss, std::move(stages), std::move(encoding),
                       std::move(feature_names));
    model.attach_schema(std::move(schema));
    return model;
}

void save_model(const BoostedModel& model, const std::filesystem::path& path) {
    write_file_atomic(path, serialize_model(model));
}

BoostedModel load_model(const std::filesystem::path& path) {
    return deserialize_model(read_file(path));
}

}  // namespace fracboost
