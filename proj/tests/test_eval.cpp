#include <doctest.h>

#include <cmath>

#include "fracboost/error.hpp"
#include "fracboost/eval.hpp"
#include "fracboost/metrics.hpp"
#include "fracboost/model_io.hpp"
#include "fracboost/splits.hpp"
#include "fracboost/synth.hpp"

using namespace fracboost;

namespace {

Dataset synth_dataset(std::uint64_t seed, std::size_t n, double noise, double missing) {
    SynthSpec spec;
    spec.n_rows = n;
    spec.seed = seed;
    spec.noise_sigma = noise;
    spec.missing_rate = missing;
    return generate(spec).dataset;
}

BoostConfig quick_config(std::size_t m, std::size_t depth) {
    BoostConfig config;
    config.n_iterations = m;
    config.max_depth = depth;
    config.min_leaf = 3;
    config.shrinkage = 0.1;
    return config;
}

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("a single split equals the manual composition") {
    const auto ds = synth_dataset(1001, 150, 3.0, 0.05);
    const auto config = quick_config(20, 2);
    const std::uint64_t seed = 77;

    const auto summary = repeated_split_eval(ds, config, 1, 0.2, seed);
    REQUIRE(summary.per_split.size() == 1);

    const auto split = random_split(ds.n_rows(), 0.2, seed);
    const auto train = ds.select_rows(split.train);
    const auto test = ds.select_rows(split.test);
    const auto model = train_model(train, config);
    const auto predictions = model.predict(test);

    CHECK(summary.per_split[0].seed == seed);
    CHECK(summary.per_split[0].mae == mae(test.target(), predictions));
    CHECK(summary.per_split[0].pearson == pearson(test.target(), predictions));
    CHECK(summary.mean_mae == summary.per_split[0].mae);
    CHECK(summary.std_mae == 0.0);
}

TEST_CASE("the protocol is deterministic") {
    const auto ds = synth_dataset(1002, 120, 3.0, 0.05);
    const auto config = quick_config(15, 2);
    const auto a = repeated_split_eval(ds, config, 4, 0.2, 5);
    const auto b = repeated_split_eval(ds, config, 4, 0.2, 5);
    CHECK(eval_report_csv(a) == eval_report_csv(b));
}

TEST_CASE("aggregates recompute exactly from the per-split entries") {
    const auto ds = synth_dataset(1003, 120, 3.0, 0.05);
    const auto summary = repeated_split_eval(ds, quick_config(15, 2), 5, 0.25, 11);
    double sum_mae = 0.0;
    double sum_pearson = 0.0;
    for (const auto& score : summary.per_split) {
        sum_mae += score.mae;
        sum_pearson += score.pearson;
    }
    CHECK(summary.mean_mae == sum_mae / 5.0);
    CHECK(summary.mean_pearson == sum_pearson / 5.0);
    double var = 0.0;
    for (const auto& score : summary.per_split) {
        var += (score.mae - summary.mean_mae) * (score.mae - summary.mean_mae);
    }
    CHECK(summary.std_mae == std::sqrt(var / 5.0));
}

TEST_CASE("split seeds follow base_seed + s") {
    const auto ds = synth_dataset(1004, 100, 3.0, 0.0);
    const auto summary = repeated_split_eval(ds, quick_config(10, 2), 3, 0.2, 40);
    CHECK(summary.per_split[0].seed == 40);
    CHECK(summary.per_split[1].seed == 41);
    CHECK(summary.per_split[2].seed == 42);
}

TEST_CASE("corrupting test targets after the split leaves the model unchanged") {
    const auto ds = synth_dataset(1005, 140, 3.0, 0.05);
    const auto config = quick_config(15, 2);
    const auto split = random_split(ds.n_rows(), 0.2, 9);

    const auto model_clean = train_model(ds.select_rows(split.train), config);

    auto targets = ds.target();
    for (std::size_t idx : split.test) {
        targets[idx] += 1000.0;
    }
    std::vector<Column> columns;
    for (std::size_t c = 0; c < ds.n_feature_columns(); ++c) {
        columns.push_back(ds.column(c));
    }
    const Dataset corrupted(ds.schema(), std::move(columns), std::move(targets));
    const auto model_corrupted = train_model(corrupted.select_rows(split.train), config);

    CHECK(serialize_model(model_clean) == serialize_model(model_corrupted));
}

TEST_CASE("baseline protocol uses MAE only and handles constant predictions") {
    const auto ds = synth_dataset(1006, 100, 3.0, 0.0);
    const auto baseline = repeated_split_baseline(ds, 4, 0.2, 3);
    REQUIRE(baseline.per_split_mae.size() == 4);
    for (double v : baseline.per_split_mae) {
        CHECK(v > 0.0);
    }
    CHECK(baseline.mean_mae ==
          (baseline.per_split_mae[0] + baseline.per_split_mae[1] + baseline.per_split_mae[2] +
           baseline.per_split_mae[3]) /
              4.0);
}

TEST_CASE("singleton grids reduce to one k-fold evaluation") {
    const auto ds = synth_dataset(1007, 120, 3.0, 0.05);
    const auto config = quick_config(10, 2);
    const auto result = cv_tune(ds, {10}, {2}, 3, 21, config);
    REQUIRE(result.grid.size() == 1);
    CHECK(result.best_iterations == 10);
    CHECK(result.best_depth == 2);
    CHECK(result.best_cv_mean_mae == result.grid[0].cv_mean_mae);

    // manual 3-fold evaluation with the same seed
    const auto folds = kfold_indices(ds.n_rows(), 3, 21);
    double sum = 0.0;
    for (const auto& fold : folds) {
        const auto train = ds.select_rows(fold.train);
        const auto validation = ds.select_rows(fold.validation);
        const auto model = train_model(train, config);
        sum += mae(validation.target(), model.predict(validation));
    }
    CHECK(result.best_cv_mean_mae == sum / 3.0);
}

TEST_CASE("staged scoring equals naive retraining bit-exactly") {
    const auto ds = synth_dataset(1008, 100, 3.0, 0.05);
    const auto config = quick_config(1, 1);
    const std::vector<std::size_t> m_grid{5, 12, 25};
    const std::vector<std::size_t> depth_grid{1, 3};
    const auto staged = cv_tune(ds, m_grid, depth_grid, 4, 31, config, Execution::parallel, true);
    const auto naive = cv_tune(ds, m_grid, depth_grid, 4, 31, config, Execution::parallel, false);
    REQUIRE(staged.grid.size() == naive.grid.size());
    for (std::size_t i = 0; i < staged.grid.size(); ++i) {
        CHECK(staged.grid[i].n_iterations == naive.grid[i].n_iterations);
        CHECK(staged.grid[i].max_depth == naive.grid[i].max_depth);
        CHECK(staged.grid[i].cv_mean_mae == naive.grid[i].cv_mean_mae);
    }
    CHECK(staged.best_iterations == naive.best_iterations);
    CHECK(staged.best_depth == naive.best_depth);
}

TEST_CASE("exact ties select the smallest iterations, then depth") {
    // Constant targets make every grid cell identical (MAE 0 everywhere).
    auto base = synth_dataset(1009, 60, 1.0, 0.0);
    std::vector<Column> columns;
    for (std::size_t c = 0; c < base.n_feature_columns(); ++c) {
        columns.push_back(base.column(c));
    }
    const Dataset constant(base.schema(), std::move(columns),
                           std::vector<double>(base.n_rows(), 5.0));
    const auto result =
        cv_tune(constant, {100, 25}, {4, 2}, 3, 1, quick_config(1, 1));
    CHECK(result.best_iterations == 25);
    CHECK(result.best_depth == 2);
    CHECK(result.best_cv_mean_mae == 0.0);
}

TEST_CASE("interaction signal drives the selected depth above one") {
    const auto ds = synth_dataset(1010, 400, 0.5, 0.0);
    const auto result = cv_tune(ds, {150}, {1, 2, 3}, 4, 17, quick_config(1, 1));
    CHECK(result.best_depth >= 2);
}

TEST_CASE("the selected cell attains the grid minimum") {
    const auto ds = synth_dataset(1011, 130, 3.0, 0.05);
    const auto result = cv_tune(ds, {10, 30}, {1, 2}, 3, 8, quick_config(1, 1));
    for (const auto& cell : result.grid) {
        CHECK(result.best_cv_mean_mae <= cell.cv_mean_mae);
    }
}

TEST_CASE("baseline column metrics skip missing predictions and note the support") {
    const auto schema = parse_schema(
        "x,numeric,job\n"
        "y,numeric,general,target\n");
    const auto loaded = load_dataset(
        "x,y,old_forecast\n"
        "1,10,12\n"
        "2,20,\n"
        "3,30,28\n"
        "4,40,39\n",
        schema, {"old_forecast"});
    const auto metrics = baseline_column_metrics(loaded.dataset, loaded.extra_columns[0].second);
    CHECK(metrics.n_rows == 3);
    CHECK(metrics.mae == doctest::Approx((2.0 + 2.0 + 1.0) / 3.0).epsilon(1e-12));

    EvalSummary fake;
    fake.mean_mae = 1.5;
    fake.mean_pearson = 0.9;
    const auto table = comparison_table_csv(metrics, fake, 50, 0.2);
    CHECK(table.find("existing_model,gradient_boosting") != std::string::npos);
    CHECK(table.find("# existing-model metrics") != std::string::npos);
    CHECK(table.find("50 random 20% test splits") != std::string::npos);
}

TEST_CASE("cv_tune validates grids") {
    const auto ds = synth_dataset(1012, 50, 2.0, 0.0);
    CHECK_THROWS_AS(cv_tune(ds, {}, {1}, 3, 0, quick_config(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(cv_tune(ds, {10}, {}, 3, 0, quick_config(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(cv_tune(ds, {0}, {1}, 3, 0, quick_config(1, 1)), std::invalid_argument);
}

}  // TEST_SUITE
