#include "fracboost/boosting.hpp"

#include <cmath>
#include <stdexcept>

#include "fracboost/error.hpp"

namespace fracboost {

void BoostConfig::validate() const {
    if (n_iterations < 1) {
        throw std::invalid_argument("boost config: n_iterations must be >= 1");
    }
    if (!(shrinkage > 0.0 && shrinkage <= 1.0)) {
        throw std::invalid_argument("boost config: shrinkage must be in (0, 1]");
    }
}

BoostedModel::BoostedModel(double base_prediction, double shrinkage, LossKind loss,
                           std::vector<Stage> stages, EncodingMap encoding,
                           std::vector<std::string> feature_names)
    : base_prediction_(base_prediction),
      shrinkage_(shrinkage),
      loss_(loss),
      stages_(std::move(stages)),
      encoding_(std::move(encoding)),
      feature_names_(std::move(feature_names)) {}

const FeatureSchema& BoostedModel::schema() const {
    if (!schema_) {
        throw DataError("model: no schema attached");
    }
    return *schema_;
}

double BoostedModel::predict_row(std::span<const double> encoded_row) const {
    if (encoded_row.size() != n_features()) {
        throw DataError("model: row has " + std::to_string(encoded_row.size()) +
                        " features, expected " + std::to_string(n_features()));
    }
    double value = base_prediction_;
    for (const Stage& stage : stages_) {
        value += shrinkage_ * stage.step_size * stage.tree.predict_row(encoded_row);
    }
    return value;
}

std::vector<double> BoostedModel::predict_matrix(const EncodedMatrix& matrix,
                                                 Execution exec) const {
    if (matrix.n_features() != n_features()) {
        throw DataError("model: matrix has " + std::to_string(matrix.n_features()) +
                        " features, expected " + std::to_string(n_features()));
    }
    std::vector<double> out(matrix.n_rows());
    const bool parallel = exec == Execution::parallel && matrix.n_rows() > 256;
#pragma omp parallel for schedule(static) if (parallel)
    for (std::ptrdiff_t r = 0; r < static_cast<std::ptrdiff_t>(matrix.n_rows()); ++r) {
        out[static_cast<std::size_t>(r)] = predict_row(matrix.row(static_cast<std::size_t>(r)));
    }
    return out;
}

std::vector<double> BoostedModel::predict(const Dataset& dataset, Execution exec) const {
    const auto& model_schema = schema();
    const auto& expected = model_schema.features();
    const auto& got = dataset.schema().features();
    const std::size_t common = std::min(expected.size(), got.size());
    for (std::size_t i = 0; i < common; ++i) {
        if (expected[i].name != got[i].name || expected[i].kind != got[i].kind) {
            throw DataError("model: schema mismatch at column '" + got[i].name + "', expected '" +
                            expected[i].name + "' (" + to_string(expected[i].kind) + ")");
        }
    }
    if (expected.size() != got.size()) {
        const auto& longer = expected.size() > got.size() ? expected : got;
        throw DataError("model: schema mismatch at column '" + longer[common].name + "'");
    }
    return predict_matrix(encode(dataset, encoding_), exec);
}

BoostedModel fit_gbm(const EncodedMatrix& matrix, std::span<const double> y,
                     const BoostConfig& config, Execution exec) {
    config.validate();
    if (matrix.n_rows() != y.size()) {
        throw std::invalid_argument("fit_gbm: matrix/target length mismatch");
    }
    if (y.size() < 2) {
        throw std::invalid_argument("fit_gbm: need at least 2 rows");
    }
    for (double v : y) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("fit_gbm: non-finite target");
        }
    }

    const LossFunction loss(config.loss);
    const double base = loss.optimal_constant(y);
    std::vector<double> f(y.size(), base);

    std::vector<BoostedModel::Stage> stages;
    stages.reserve(config.n_iterations);
    std::vector<double> loss_path;
    loss_path.reserve(config.n_iterations + 1);
    loss_path.push_back(loss.mean_loss(y, f));

    for (std::size_t m = 0; m < config.n_iterations; ++m) {
        const auto residuals = pseudo_residuals(loss, y, f);
        RegressionTree tree = fit_tree(matrix, residuals, config.max_depth, config.min_leaf, exec);
        const auto h = predict_rows(tree, matrix, exec);
        double b = line_search(loss, y, f, h);

        std::vector<double> f_next(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            f_next[i] = f[i] + config.shrinkage * b * h[i];
        }
        double new_loss = loss.mean_loss(y, f_next);
        // The searched step can never do worse than b = 0; enforce that
        // exactly in floating point.
        if (new_loss > loss_path.back()) {
            b = 0.0;
            new_loss = loss_path.back();
        } else {
            f = std::move(f_next);
        }
        stages.push_back({b, std::move(tree)});
        loss_path.push_back(new_loss);
    }

    BoostedModel model(base, config.shrinkage, config.loss, std::move(stages), matrix.encoding(),
                       matrix.feature_names());
    model.set_training_loss(std::move(loss_path));
    return model;
}

BoostedModel train_model(const Dataset& dataset, const BoostConfig& config, Execution exec) {
    const auto encoding = fit_encoding(dataset);
    const auto matrix = encode(dataset, encoding);
    BoostedModel model = fit_gbm(matrix, dataset.target(), config, exec);
    model.attach_schema(dataset.schema());
    return model;
}

}  // namespace fracboost
