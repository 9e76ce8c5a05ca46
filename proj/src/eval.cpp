#include "fracboost/eval.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>

#include "fracboost/common.hpp"
#include "fracboost/error.hpp"
#include "fracboost/metrics.hpp"
#include "fracboost/splits.hpp"

namespace fracboost {
namespace {

struct CellOutcome {
    std::vector<double> mae_at_m;  // aligned with the m_grid
    std::exception_ptr error;
};

double mean_in_order(const std::vector<double>& values) {
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

}  // namespace

EvalSummary repeated_split_eval(const Dataset& dataset, const BoostConfig& config,
                                std::size_t n_splits, double test_fraction,
                                std::uint64_t base_seed, Execution exec) {
    if (n_splits == 0) {
        throw std::invalid_argument("repeated_split_eval: n_splits must be >= 1");
    }
    EvalSummary summary;
    summary.per_split.resize(n_splits);
    std::vector<std::exception_ptr> errors(n_splits);

    const bool parallel = exec == Execution::parallel && n_splits > 1;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::ptrdiff_t si = 0; si < static_cast<std::ptrdiff_t>(n_splits); ++si) {
        const auto s = static_cast<std::size_t>(si);
        const std::uint64_t seed = base_seed + s;
        try {
            const auto split = random_split(dataset.n_rows(), test_fraction, seed);
            const Dataset train = dataset.select_rows(split.train);
            const Dataset test = dataset.select_rows(split.test);
            const BoostedModel model = train_model(train, config, exec);
            const auto predictions = model.predict(test, exec);
            summary.per_split[s] = {seed, mae(test.target(), predictions),
                                    pearson(test.target(), predictions)};
        } catch (...) {
            errors[s] = std::current_exception();
        }
    }
    for (const auto& error : errors) {
        if (error) {
            std::rethrow_exception(error);
        }
    }

    // Aggregate in split order so the result is independent of scheduling.
    double sum_mae = 0.0;
    double sum_pearson = 0.0;
    for (const auto& score : summary.per_split) {
        sum_mae += score.mae;
        sum_pearson += score.pearson;
    }
    summary.mean_mae = sum_mae / static_cast<double>(n_splits);
    summary.mean_pearson = sum_pearson / static_cast<double>(n_splits);
    double var = 0.0;
    for (const auto& score : summary.per_split) {
        const double d = score.mae - summary.mean_mae;
        var += d * d;
    }
    summary.std_mae = std::sqrt(var / static_cast<double>(n_splits));
    return summary;
}

BaselineSummary repeated_split_baseline(const Dataset& dataset, std::size_t n_splits,
                                        double test_fraction, std::uint64_t base_seed) {
    if (n_splits == 0) {
        throw std::invalid_argument("repeated_split_baseline: n_splits must be >= 1");
    }
    BaselineSummary summary;
    summary.per_split_mae.resize(n_splits);
    for (std::size_t s = 0; s < n_splits; ++s) {
        const auto split = random_split(dataset.n_rows(), test_fraction, base_seed + s);
        const Dataset train = dataset.select_rows(split.train);
        const Dataset test = dataset.select_rows(split.test);
        const double constant = LossFunction(LossKind::squared).optimal_constant(train.target());
        const std::vector<double> predictions(test.n_rows(), constant);
        summary.per_split_mae[s] = mae(test.target(), predictions);
    }
    summary.mean_mae = mean_in_order(summary.per_split_mae);
    return summary;
}

TuneResult cv_tune(const Dataset& dataset, const std::vector<std::size_t>& m_grid,
                   const std::vector<std::size_t>& depth_grid, std::size_t k, std::uint64_t seed,
                   const BoostConfig& config_base, Execution exec, bool staged) {
    if (m_grid.empty() || depth_grid.empty()) {
        throw std::invalid_argument("cv_tune: grids must be nonempty");
    }
    for (std::size_t m : m_grid) {
        if (m < 1) {
            throw std::invalid_argument("cv_tune: iteration counts must be >= 1");
        }
    }
    const auto folds = kfold_indices(dataset.n_rows(), k, seed);
    const std::size_t m_max = *std::max_element(m_grid.begin(), m_grid.end());

    // One cell per (depth, fold); every M in the grid is scored inside it.
    std::vector<CellOutcome> cells(depth_grid.size() * k);
    const bool parallel = exec == Execution::parallel && cells.size() > 1;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::ptrdiff_t ci = 0; ci < static_cast<std::ptrdiff_t>(cells.size()); ++ci) {
        const auto cell = static_cast<std::size_t>(ci);
        const std::size_t depth_idx = cell / k;
        const std::size_t fold_idx = cell % k;
        try {
            const Dataset train = dataset.select_rows(folds[fold_idx].train);
            const Dataset validation = dataset.select_rows(folds[fold_idx].validation);
            const auto encoding = fit_encoding(train);
            const auto train_matrix = encode(train, encoding);
            const auto val_matrix = encode(validation, encoding);

            auto& mae_at_m = cells[cell].mae_at_m;
            mae_at_m.assign(m_grid.size(), 0.0);

            if (staged) {
                BoostConfig cfg = config_base;
                cfg.max_depth = depth_grid[depth_idx];
                cfg.n_iterations = m_max;
                const BoostedModel model = fit_gbm(train_matrix, train.target(), cfg, exec);

                std::vector<double> f(validation.n_rows(), model.base_prediction());
                for (std::size_t m = 0; m < model.stages().size(); ++m) {
                    const auto& stage = model.stages()[m];
                    for (std::size_t i = 0; i < f.size(); ++i) {
                        f[i] += model.shrinkage() * stage.step_size *
                                stage.tree.predict_row(val_matrix.row(i));
                    }
                    for (std::size_t gi = 0; gi < m_grid.size(); ++gi) {
                        if (m_grid[gi] == m + 1) {
                            mae_at_m[gi] = mae(validation.target(), f);
                        }
                    }
                }
            } else {
                for (std::size_t gi = 0; gi < m_grid.size(); ++gi) {
                    BoostConfig cfg = config_base;
                    cfg.max_depth = depth_grid[depth_idx];
                    cfg.n_iterations = m_grid[gi];
                    const BoostedModel model = fit_gbm(train_matrix, train.target(), cfg, exec);
                    const auto predictions = model.predict_matrix(val_matrix, exec);
                    mae_at_m[gi] = mae(validation.target(), predictions);
                }
            }
        } catch (...) {
            cells[cell].error = std::current_exception();
        }
    }
    for (const auto& cell : cells) {
        if (cell.error) {
            std::rethrow_exception(cell.error);
        }
    }

    TuneResult result;
    result.best_cv_mean_mae = std::numeric_limits<double>::infinity();
    for (std::size_t gi = 0; gi < m_grid.size(); ++gi) {
        for (std::size_t di = 0; di < depth_grid.size(); ++di) {
            double sum = 0.0;
            for (std::size_t fold_idx = 0; fold_idx < k; ++fold_idx) {
                sum += cells[di * k + fold_idx].mae_at_m[gi];
            }
            const double cv_mean = sum / static_cast<double>(k);
            result.grid.push_back({m_grid[gi], depth_grid[di], cv_mean});
        }
    }
    for (const auto& cell : result.grid) {
        const bool better =
            cell.cv_mean_mae < result.best_cv_mean_mae ||
            (cell.cv_mean_mae == result.best_cv_mean_mae &&
             (cell.n_iterations < result.best_iterations ||
              (cell.n_iterations == result.best_iterations && cell.max_depth < result.best_depth)));
        if (better) {
            result.best_cv_mean_mae = cell.cv_mean_mae;
            result.best_iterations = cell.n_iterations;
            result.best_depth = cell.max_depth;
        }
    }
    return result;
}

std::string eval_report_csv(const EvalSummary& summary) {
    std::string out = "split,seed,mae,pearson\n";
    for (std::size_t s = 0; s < summary.per_split.size(); ++s) {
        const auto& score = summary.per_split[s];
        out += std::to_string(s) + "," + std::to_string(score.seed) + "," +
               format_double(score.mae) + "," + format_double(score.pearson) + "\n";
    }
    out += "summary,mean," + format_double(summary.mean_mae) + "," +
           format_double(summary.mean_pearson) + "\n";
    out += "summary,std_mae," + format_double(summary.std_mae) + ",\n";
    return out;
}

std::string tune_report_csv(const TuneResult& result) {
    std::string out = "iterations,depth,cv_mean_mae,selected\n";
    for (const auto& cell : result.grid) {
        const bool selected = cell.n_iterations == result.best_iterations &&
                              cell.max_depth == result.best_depth;
        out += std::to_string(cell.n_iterations) + "," + std::to_string(cell.max_depth) + "," +
               format_double(cell.cv_mean_mae) + "," + (selected ? "1" : "0") + "\n";
    }
    return out;
}

BaselineColumnMetrics baseline_column_metrics(const Dataset& dataset,
                                              const std::vector<double>& baseline_predictions) {
    if (baseline_predictions.size() != dataset.n_rows()) {
        throw std::invalid_argument("baseline_column_metrics: length mismatch");
    }
    std::vector<double> y;
    std::vector<double> yhat;
    for (std::size_t i = 0; i < baseline_predictions.size(); ++i) {
        if (!is_missing(baseline_predictions[i])) {
            y.push_back(dataset.target()[i]);
            yhat.push_back(baseline_predictions[i]);
        }
    }
    if (y.empty()) {
        throw DataError("baseline column has no known predictions");
    }
    return {mae(y, yhat), pearson(y, yhat), y.size()};
}

std::string comparison_table_csv(const BaselineColumnMetrics& baseline, const EvalSummary& model,
                                 std::size_t n_splits, double test_fraction) {
    std::string out = "metric,existing_model,gradient_boosting\n";
    out += "mae," + format_double(baseline.mae) + "," + format_double(model.mean_mae) + "\n";
    out += "pearson," + format_double(baseline.pearson) + "," +
           format_double(model.mean_pearson) + "\n";
    out += "# existing-model metrics are computed once over the " +
           std::to_string(baseline.n_rows) +
           " rows with known predictions; gradient-boosting metrics are averaged over " +
           std::to_string(n_splits) + " random " +
           format_double(test_fraction * 100.0) +
           "% test splits. The two supports differ.\n";
    return out;
}

}  // namespace fracboost
