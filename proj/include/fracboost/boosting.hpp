#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fracboost/common.hpp"
#include "fracboost/dataset.hpp"
#include "fracboost/encoding.hpp"
#include "fracboost/loss.hpp"
#include "fracboost/tree.hpp"

namespace fracboost {

struct BoostConfig {
    std::size_t n_iterations = 200;
    std::size_t max_depth = 3;
    std::size_t min_leaf = 5;
    double shrinkage = 0.1;  // 1.0 recovers the undamped gradient step
    LossKind loss = LossKind::squared;
    // Reserved for stochastic variants; training itself draws no randomness.
    std::uint64_t seed = 0;

    void validate() const;
};

// Additive model: base prediction plus M line-searched tree stages,
//   prediction(x) = F0 + sum_m shrinkage * b_m * tree_m(x).
// Immutable once fitted; safe for concurrent prediction.
class BoostedModel {
public:
    struct Stage {
        double step_size = 0.0;  // b_m from the one-dimensional line search
        RegressionTree tree;
    };

    BoostedModel() = default;
    BoostedModel(double base_prediction, double shrinkage, LossKind loss,
                 std::vector<Stage> stages, EncodingMap encoding,
                 std::vector<std::string> feature_names);

    double base_prediction() const { return base_prediction_; }
    double shrinkage() const { return shrinkage_; }
    LossKind loss_kind() const { return loss_; }
    const std::vector<Stage>& stages() const { return stages_; }
    const EncodingMap& encoding() const { return encoding_; }
    const std::vector<std::string>& feature_names() const { return feature_names_; }
    std::size_t n_features() const { return feature_names_.size(); }

    // Set when the model was trained (or loaded) with a schema attached;
    // required for predicting on raw datasets and for persistence.
    bool has_schema() const { return schema_.has_value(); }
    const FeatureSchema& schema() const;
    void attach_schema(FeatureSchema schema) { schema_ = std::move(schema); }

    // Mean training loss at F0 followed by one entry per stage. Populated by
    // fit_gbm only; a loaded model replays it from the training data instead.
    const std::vector<double>& training_loss() const { return training_loss_; }
    void set_training_loss(std::vector<double> path) { training_loss_ = std::move(path); }

    double predict_row(std::span<const double> encoded_row) const;
    std::vector<double> predict_matrix(const EncodedMatrix& matrix,
                                       Execution exec = Execution::parallel) const;
    // Encodes with the stored schema + encoding map, then evaluates.
    std::vector<double> predict(const Dataset& dataset,
                                Execution exec = Execution::parallel) const;

private:
    double base_prediction_ = 0.0;
    double shrinkage_ = 1.0;
    LossKind loss_ = LossKind::squared;
    std::vector<Stage> stages_;
    EncodingMap encoding_;
    std::vector<std::string> feature_names_;
    std::optional<FeatureSchema> schema_;
    std::vector<double> training_loss_;
};

// Functional gradient descent: F0 is the loss-optimal constant; each stage
// fits a tree to the anti-gradient, line-searches the step size, and applies
// it damped by shrinkage. Deterministic: identical inputs give a
// bit-identical model regardless of execution policy.
BoostedModel fit_gbm(const EncodedMatrix& matrix, std::span<const double> y,
                     const BoostConfig& config, Execution exec = Execution::parallel);

// Fits the encoding on the dataset, encodes, boosts, and attaches the schema
// so the returned model can predict on raw rows and be persisted.
BoostedModel train_model(const Dataset& dataset, const BoostConfig& config,
                         Execution exec = Execution::parallel);

}  // namespace fracboost
