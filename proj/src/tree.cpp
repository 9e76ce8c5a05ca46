#include "fracboost/tree.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <utility>

#include "fracboost/error.hpp"

namespace fracboost {
namespace {

struct LocalCandidate {
    double threshold = 0.0;
    bool missing_goes_left = false;
    double sse_reduction = 0.0;
};

// Mean over a canonical (value-sorted) summation order so the result does
// not depend on row order. Constant inputs short-circuit so the mean is the
// shared value bit-for-bit.
double canonical_mean(std::vector<double> values) {
    if (values.empty()) {
        return 0.0;
    }
    const bool constant = std::all_of(values.begin(), values.end(),
                                      [&](double v) { return v == values.front(); });
    if (constant) {
        return values.front();
    }
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

// Scores every threshold of one feature. `present` holds (value, target) for
// rows with an observed value, `missing_targets` the targets of rows whose
// value is absent; both are sorted here to keep sums order-canonical.
//
// The reduction uses the identity
//   SSE(parent) - SSE(L) - SSE(R) = SL^2/nL + SR^2/nR - S^2/n,
// valid because the sum-of-squares terms cancel.
std::optional<LocalCandidate> best_split_gathered(std::vector<std::pair<double, double>>& present,
                                                  std::vector<double>& missing_targets,
                                                  std::size_t min_leaf) {
    const std::size_t p = present.size();
    const std::size_t m = missing_targets.size();
    const std::size_t n = p + m;
    if (p < 2) {
        return std::nullopt;
    }
    std::sort(present.begin(), present.end());
    std::sort(missing_targets.begin(), missing_targets.end());

    double missing_sum = 0.0;
    for (double t : missing_targets) {
        missing_sum += t;
    }
    double present_sum = 0.0;
    for (const auto& [v, t] : present) {
        present_sum += t;
    }
    const double total = present_sum + missing_sum;
    const double parent_term = total * total / static_cast<double>(n);

    LocalCandidate best;
    bool found = false;
    double prefix = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        prefix += present[i].second;
        if (i + 1 == p || present[i].first == present[i + 1].first) {
            continue;  // not a boundary between distinct values
        }
        const double threshold = present[i].first + (present[i + 1].first - present[i].first) / 2.0;

        // missing routed right first so an exact tie keeps missing_goes_left = false
        for (int route_left = 0; route_left < (m > 0 ? 2 : 1); ++route_left) {
            const std::size_t n_left = i + 1 + (route_left ? m : 0);
            const std::size_t n_right = n - n_left;
            if (n_left < min_leaf || n_right < min_leaf) {
                continue;
            }
            const double sum_left = prefix + (route_left ? missing_sum : 0.0);
            const double sum_right = total - sum_left;
            const double reduction = sum_left * sum_left / static_cast<double>(n_left) +
                                     sum_right * sum_right / static_cast<double>(n_right) -
                                     parent_term;
            if (reduction > best.sse_reduction) {
                best = {threshold, route_left != 0, reduction};
                found = true;
            }
        }
    }
    if (!found) {
        return std::nullopt;
    }
    return best;
}

bool all_targets_equal(std::span<const double> targets, std::span<const std::size_t> rows) {
    const double first = targets[rows.front()];
    return std::all_of(rows.begin(), rows.end(),
                       [&](std::size_t r) { return targets[r] == first; });
}

std::optional<LocalCandidate> evaluate_feature(const EncodedMatrix& matrix,
                                               std::span<const double> targets,
                                               std::span<const std::size_t> rows,
                                               std::size_t feature, std::size_t min_leaf) {
    std::vector<std::pair<double, double>> present;
    present.reserve(rows.size());
    std::vector<double> missing_targets;
    for (std::size_t r : rows) {
        const double v = matrix.at(r, feature);
        if (is_missing(v)) {
            missing_targets.push_back(targets[r]);
        } else {
            present.emplace_back(v, targets[r]);
        }
    }
    return best_split_gathered(present, missing_targets, min_leaf);
}

// Deterministic merge: features scanned in index order, strict improvement
// only, so the winner never depends on thread scheduling.
std::optional<SplitCandidate> node_best_split(const EncodedMatrix& matrix,
                                              std::span<const double> targets,
                                              std::span<const std::size_t> rows,
                                              std::size_t min_leaf, Execution exec) {
    const std::size_t d = matrix.n_features();
    std::vector<std::optional<LocalCandidate>> per_feature(d);

    const bool parallel = exec == Execution::parallel && d * rows.size() > 4096;
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t f = 0; f < static_cast<std::ptrdiff_t>(d); ++f) {
        per_feature[static_cast<std::size_t>(f)] =
            evaluate_feature(matrix, targets, rows, static_cast<std::size_t>(f), min_leaf);
    }

    std::optional<SplitCandidate> best;
    for (std::size_t f = 0; f < d; ++f) {
        const auto& cand = per_feature[f];
        if (cand && (!best || cand->sse_reduction > best->sse_reduction)) {
            best = SplitCandidate{f, cand->threshold, cand->missing_goes_left, cand->sse_reduction};
        }
    }
    return best;
}

std::size_t node_depth(const std::vector<RegressionTree::Node>& nodes, std::size_t idx) {
    if (nodes[idx].is_leaf()) {
        return 0;
    }
    return 1 + std::max(node_depth(nodes, static_cast<std::size_t>(nodes[idx].left)),
                        node_depth(nodes, static_cast<std::size_t>(nodes[idx].right)));
}

}  // namespace

std::optional<SplitCandidate> best_split(std::span<const double> feature_values,
                                         std::span<const double> targets, std::size_t min_leaf) {
    if (feature_values.size() != targets.size()) {
        throw std::invalid_argument("best_split: feature/target length mismatch");
    }
    if (targets.empty()) {
        return std::nullopt;
    }
    const double first = targets.front();
    if (std::all_of(targets.begin(), targets.end(), [&](double t) { return t == first; })) {
        return std::nullopt;  // pure node: zero reduction everywhere
    }
    std::vector<std::pair<double, double>> present;
    std::vector<double> missing_targets;
    for (std::size_t i = 0; i < feature_values.size(); ++i) {
        if (is_missing(feature_values[i])) {
            missing_targets.push_back(targets[i]);
        } else {
            present.emplace_back(feature_values[i], targets[i]);
        }
    }
    const auto local = best_split_gathered(present, missing_targets, std::max<std::size_t>(min_leaf, 1));
    if (!local) {
        return std::nullopt;
    }
    return SplitCandidate{0, local->threshold, local->missing_goes_left, local->sse_reduction};
}

RegressionTree RegressionTree::from_nodes(std::vector<Node> nodes, std::size_t n_features) {
    if (nodes.empty()) {
        throw DataError("tree: empty node list");
    }
    // Every node must be reachable from the root exactly once.
    std::vector<bool> visited(nodes.size(), false);
    std::vector<std::size_t> stack{0};
    std::size_t count = 0;
    while (!stack.empty()) {
        const std::size_t idx = stack.back();
        stack.pop_back();
        if (idx >= nodes.size() || visited[idx]) {
            throw DataError("tree: malformed node links");
        }
        visited[idx] = true;
        ++count;
        const Node& node = nodes[idx];
        if (node.is_leaf()) {
            continue;
        }
        if (node.right < 0 || node.feature < 0 ||
            static_cast<std::size_t>(node.feature) >= n_features) {
            throw DataError("tree: malformed split node");
        }
        stack.push_back(static_cast<std::size_t>(node.left));
        stack.push_back(static_cast<std::size_t>(node.right));
    }
    if (count != nodes.size()) {
        throw DataError("tree: unreachable nodes in node list");
    }
    RegressionTree tree;
    tree.nodes_ = std::move(nodes);
    tree.n_features_ = n_features;
    return tree;
}

std::size_t RegressionTree::depth() const {
    if (nodes_.empty()) {
        return 0;
    }
    return node_depth(nodes_, 0);
}

double RegressionTree::predict_row(std::span<const double> row) const {
    if (row.size() != n_features_) {
        throw DataError("tree: row has " + std::to_string(row.size()) + " features, expected " +
                        std::to_string(n_features_));
    }
    std::size_t idx = 0;
    while (!nodes_[idx].is_leaf()) {
        const Node& node = nodes_[idx];
        const double v = row[static_cast<std::size_t>(node.feature)];
        const bool go_left = is_missing(v) ? node.missing_goes_left : v <= node.threshold;
        idx = static_cast<std::size_t>(go_left ? node.left : node.right);
    }
    return nodes_[idx].value;
}

RegressionTree fit_tree(const EncodedMatrix& matrix, std::span<const double> targets,
                        std::size_t max_depth, std::size_t min_leaf, Execution exec) {
    if (matrix.n_rows() == 0) {
        throw std::invalid_argument("fit_tree: empty input");
    }
    if (matrix.n_rows() != targets.size()) {
        throw std::invalid_argument("fit_tree: matrix/target length mismatch");
    }
    min_leaf = std::max<std::size_t>(min_leaf, 1);

    RegressionTree tree;
    tree.n_features_ = matrix.n_features();
    auto& nodes = tree.nodes_;

    std::vector<std::size_t> all_rows(matrix.n_rows());
    for (std::size_t i = 0; i < all_rows.size(); ++i) {
        all_rows[i] = i;
    }

    // Nodes are laid out in preorder (node, left subtree, right subtree).
    std::function<std::int32_t(std::vector<std::size_t>&, std::size_t)> build =
        [&](std::vector<std::size_t>& rows, std::size_t depth) -> std::int32_t {
        const auto idx = static_cast<std::int32_t>(nodes.size());
        RegressionTree::Node node;
        {
            std::vector<double> node_targets;
            node_targets.reserve(rows.size());
            for (std::size_t r : rows) {
                node_targets.push_back(targets[r]);
            }
            node.value = canonical_mean(std::move(node_targets));
        }
        nodes.push_back(node);

        if (depth >= max_depth || rows.size() < 2 * min_leaf || all_targets_equal(targets, rows)) {
            return idx;
        }
        const auto split = node_best_split(matrix, targets, rows, min_leaf, exec);
        if (!split) {
            return idx;
        }

        std::vector<std::size_t> left_rows;
        std::vector<std::size_t> right_rows;
        for (std::size_t r : rows) {
            const double v = matrix.at(r, split->feature_index);
            const bool go_left = is_missing(v) ? split->missing_goes_left : v <= split->threshold;
            (go_left ? left_rows : right_rows).push_back(r);
        }
        rows.clear();
        rows.shrink_to_fit();

        nodes[static_cast<std::size_t>(idx)].feature = static_cast<std::int32_t>(split->feature_index);
        nodes[static_cast<std::size_t>(idx)].threshold = split->threshold;
        nodes[static_cast<std::size_t>(idx)].missing_goes_left = split->missing_goes_left;
        const auto left_child = build(left_rows, depth + 1);
        const auto right_child = build(right_rows, depth + 1);
        nodes[static_cast<std::size_t>(idx)].left = left_child;
        nodes[static_cast<std::size_t>(idx)].right = right_child;
        return idx;
    };

    build(all_rows, 0);
    return tree;
}

double predict_tree(const RegressionTree& tree, std::span<const double> row) {
    return tree.predict_row(row);
}

std::vector<double> predict_rows(const RegressionTree& tree, const EncodedMatrix& matrix,
                                 Execution exec) {
    std::vector<double> out(matrix.n_rows());
    const bool parallel = exec == Execution::parallel && matrix.n_rows() > 512;
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(matrix.n_rows()); ++r) {
        out[static_cast<std::size_t>(r)] = tree.predict_row(matrix.row(static_cast<std::size_t>(r)));
    }
    return out;
}

}  // namespace fracboost
