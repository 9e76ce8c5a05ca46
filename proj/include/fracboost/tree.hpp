#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fracboost/common.hpp"
#include "fracboost/encoding.hpp"

namespace fracboost {

struct SplitCandidate {
    std::size_t feature_index = 0;
    double threshold = 0.0;
    bool missing_goes_left = false;
    double sse_reduction = 0.0;  // SSE(parent) - SSE(left) - SSE(right)
};

// Best split of a single feature: thresholds are midpoints of consecutive
// distinct sorted non-missing values; both missing routings are scored and
// the better one kept. Returns nullopt when no candidate improves SSE or
// satisfies min_leaf on both sides. Ties resolve to the lowest threshold,
// then missing_goes_left = false.
std::optional<SplitCandidate> best_split(std::span<const double> feature_values,
                                         std::span<const double> targets,
                                         std::size_t min_leaf);

// Depth-limited least-squares regression tree. Immutable once fitted; safe
// for concurrent prediction.
class RegressionTree {
public:
    struct Node {
        std::int32_t left = -1;   // -1 marks a leaf
        std::int32_t right = -1;
        std::int32_t feature = -1;
        double threshold = 0.0;
        bool missing_goes_left = false;
        double value = 0.0;  // leaf prediction (mean of covered targets)

        bool is_leaf() const { return left < 0; }
    };

    RegressionTree() = default;

    // Rebuilds a tree from a stored node list; validates child links.
    static RegressionTree from_nodes(std::vector<Node> nodes, std::size_t n_features);

    const std::vector<Node>& nodes() const { return nodes_; }
    std::size_t n_features() const { return n_features_; }
    std::size_t depth() const;

    // Routing: missing follows the node flag; ties at the threshold go left
    // (the predicate is value <= threshold).
    double predict_row(std::span<const double> row) const;

private:
    std::vector<Node> nodes_;
    std::size_t n_features_ = 0;

    friend RegressionTree fit_tree(const EncodedMatrix&, std::span<const double>,
                                   std::size_t, std::size_t, Execution);
};

// Greedy top-down fit. At each node the best split over all features wins,
// ties broken by lowest feature index, then lowest threshold, then
// missing_goes_left = false. Recursion stops at max_depth, min_leaf, or when
// no split strictly reduces SSE. Feature evaluation runs under OpenMP when
// exec is parallel; the serial path is the reference and both produce
// bit-identical trees.
RegressionTree fit_tree(const EncodedMatrix& matrix, std::span<const double> targets,
                        std::size_t max_depth, std::size_t min_leaf,
                        Execution exec = Execution::parallel);

double predict_tree(const RegressionTree& tree, std::span<const double> row);

std::vector<double> predict_rows(const RegressionTree& tree, const EncodedMatrix& matrix,
                                 Execution exec = Execution::parallel);

}  // namespace fracboost
