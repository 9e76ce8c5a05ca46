#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fracboost/boosting.hpp"
#include "fracboost/dataset.hpp"

namespace fracboost {

struct SplitScore {
    std::uint64_t seed = 0;
    double mae = 0.0;
    double pearson = 0.0;
};

struct EvalSummary {
    std::vector<SplitScore> per_split;
    double mean_mae = 0.0;
    double mean_pearson = 0.0;
    double std_mae = 0.0;  // population standard deviation over splits
};

// The repeated-split protocol: for split s, partition with seed
// base_seed + s, fit the encoding and the model on the training rows only,
// score MAE and Pearson on the held-out rows, then aggregate in split order.
EvalSummary repeated_split_eval(const Dataset& dataset, const BoostConfig& config,
                                std::size_t n_splits, double test_fraction,
                                std::uint64_t base_seed, Execution exec = Execution::parallel);

// Same splits, but the prediction is the training-target mean. Constant
// predictions make Pearson undefined, so this path reports MAE only.
struct BaselineSummary {
    std::vector<double> per_split_mae;
    double mean_mae = 0.0;
};
BaselineSummary repeated_split_baseline(const Dataset& dataset, std::size_t n_splits,
                                        double test_fraction, std::uint64_t base_seed);

struct TuneCell {
    std::size_t n_iterations = 0;
    std::size_t max_depth = 0;
    double cv_mean_mae = 0.0;
};

struct TuneResult {
    std::vector<TuneCell> grid;  // iteration-major, depth-minor order
    std::size_t best_iterations = 0;
    std::size_t best_depth = 0;
    double best_cv_mean_mae = 0.0;
};

// Grid search over (iterations, depth) by k-fold CV mean MAE. Per depth and
// fold the model is trained once at max(m_grid) and every smaller M is scored
// from the recorded stage outputs; this equals naive retraining bit-exactly
// (staged = false runs the naive path for verification). Ties prefer fewer
// iterations, then smaller depth.
TuneResult cv_tune(const Dataset& dataset, const std::vector<std::size_t>& m_grid,
                   const std::vector<std::size_t>& depth_grid, std::size_t k, std::uint64_t seed,
                   const BoostConfig& config_base, Execution exec = Execution::parallel,
                   bool staged = true);

// CSV renderings used by the CLI; all real values as round-trip decimal text.
std::string eval_report_csv(const EvalSummary& summary);
std::string tune_report_csv(const TuneResult& result);

// Side-by-side comparison of an existing forecast column against the boosted
// model. Baseline metrics are computed once over all rows with a known
// baseline prediction, which is a different support than the repeated test
// splits; the footnote records the asymmetry.
struct BaselineColumnMetrics {
    double mae = 0.0;
    double pearson = 0.0;
    std::size_t n_rows = 0;  // rows with a known baseline prediction
};
BaselineColumnMetrics baseline_column_metrics(const Dataset& dataset,
                                              const std::vector<double>& baseline_predictions);
std::string comparison_table_csv(const BaselineColumnMetrics& baseline, const EvalSummary& model,
                                 std::size_t n_splits, double test_fraction);

}  // namespace fracboost
