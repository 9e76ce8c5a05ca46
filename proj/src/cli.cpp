#include "fracboost/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

#include "fracboost/analysis.hpp"
#include "fracboost/boosting.hpp"
#include "fracboost/common.hpp"
#include "fracboost/dataset.hpp"
#include "fracboost/encoding.hpp"
#include "fracboost/error.hpp"
#include "fracboost/eval.hpp"
#include "fracboost/io_util.hpp"
#include "fracboost/model_io.hpp"
#include "fracboost/synth.hpp"

namespace fracboost {
namespace {

// Flag-value problems detected after CLI11 parsing; mapped to exit code 1.
class UsageError : public Error {
public:
    using Error::Error;
};

void require_usage(bool condition, const std::string& message) {
    if (!condition) {
        throw UsageError(message);
    }
}

struct CliOptions {
    std::string data_path;
    std::string schema_path;
    std::string model_path;
    std::string out_path;

    std::size_t iterations = 200;
    std::size_t depth = 3;
    std::size_t min_leaf = 5;
    double shrinkage = 0.1;
    std::string loss = "squared";
    std::uint64_t seed = 0;

    std::size_t splits = 50;
    double test_fraction = 0.2;
    std::size_t folds = 5;
    std::string m_grid = "50,100,200,400";
    std::string depth_grid = "1,2,3,4,5,6";
    double quintile = 0.2;
    std::string baseline_col;

    std::size_t rows = 2000;
    std::uint64_t synth_seed = 42;
    double noise_sigma = 5.0;
    double missing_rate = 0.05;
};

BoostConfig make_boost_config(const CliOptions& opt) {
    require_usage(opt.iterations >= 1, "--iterations must be >= 1");
    require_usage(opt.shrinkage > 0.0 && opt.shrinkage <= 1.0, "--shrinkage must be in (0, 1]");
    BoostConfig config;
    config.n_iterations = opt.iterations;
    config.max_depth = opt.depth;
    config.min_leaf = opt.min_leaf;
    config.shrinkage = opt.shrinkage;
    config.loss = parse_loss_kind(opt.loss);
    config.seed = opt.seed;
    return config;
}

std::vector<std::size_t> parse_grid(const std::string& text, const std::string& flag) {
    std::vector<std::size_t> values;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == ',') {
            const std::string token = text.substr(start, i - start);
            try {
                values.push_back(static_cast<std::size_t>(parse_uint(token)));
            } catch (const std::invalid_argument&) {
                throw UsageError(flag + ": cannot parse '" + token + "' as a positive integer");
            }
            require_usage(values.back() >= 1, flag + ": entries must be >= 1");
            start = i + 1;
        }
    }
    require_usage(!values.empty(), flag + ": empty grid");
    return values;
}

LoadResult load_inputs(const std::string& data_path, const FeatureSchema& schema,
                       const std::vector<std::string>& extra_columns = {}) {
    auto loaded = load_dataset(read_file(data_path), schema, extra_columns);
    if (loaded.rows_dropped_missing_target > 0) {
        std::cerr << "note: dropped " << loaded.rows_dropped_missing_target
                  << " row(s) with missing target\n";
    }
    for (const auto& warning : high_cardinality_warnings(loaded.dataset)) {
        std::cerr << "warning: " << warning << "\n";
    }
    return loaded;
}

int run_synth(const CliOptions& opt) {
    SynthSpec spec;
    spec.n_rows = opt.rows;
    spec.seed = opt.synth_seed;
    spec.noise_sigma = opt.noise_sigma;
    spec.missing_rate = opt.missing_rate;
    require_usage(spec.n_rows >= 1, "--rows must be >= 1");
    require_usage(spec.noise_sigma >= 0.0, "--noise-sigma must be >= 0");
    require_usage(spec.missing_rate >= 0.0 && spec.missing_rate < 1.0,
                  "--missing-rate must be in [0, 1)");

    const auto data = generate(spec);
    const std::filesystem::path out_dir(opt.out_path);

    write_file_atomic(out_dir / "synthetic.csv", dataset_to_csv(data.dataset));
    std::string truth_csv = "ground_truth\n";
    for (double v : data.ground_truth) {
        truth_csv += format_double(v) + "\n";
    }
    write_file_atomic(out_dir / "ground_truth.csv", truth_csv);
    write_file_atomic(out_dir / "schema.cfg", data.dataset.schema().to_config_text());

    std::cout << "wrote " << (out_dir / "synthetic.csv").string() << " (" << spec.n_rows
              << " rows)\n";
    std::cout << "wrote " << (out_dir / "ground_truth.csv").string() << "\n";
    std::cout << "wrote " << (out_dir / "schema.cfg").string() << "\n";
    return 0;
}

int run_train(const CliOptions& opt) {
    const BoostConfig config = make_boost_config(opt);
    const FeatureSchema schema = parse_schema(read_file(opt.schema_path));
    const auto loaded = load_inputs(opt.data_path, schema);

    const BoostedModel model = train_model(loaded.dataset, config);
    save_model(model, opt.model_path);

    std::cout << "model written to " << opt.model_path << ": " << model.stages().size()
              << " stages over " << model.n_features() << " encoded features, training "
              << to_string(model.loss_kind()) << " loss "
              << format_double(model.training_loss().back()) << "\n";
    return 0;
}

int run_predict(const CliOptions& opt) {
    const BoostedModel model = load_model(opt.model_path);
    const auto loaded = load_inputs(opt.data_path, model.schema());
    const auto predictions = model.predict(loaded.dataset);

    std::string csv = "prediction\n";
    for (double p : predictions) {
        csv += format_double(p) + "\n";
    }
    write_file_atomic(opt.out_path, csv);
    std::cout << "predictions written to " << opt.out_path << " (" << predictions.size()
              << " rows)\n";
    return 0;
}

int run_evaluate(const CliOptions& opt) {
    const BoostConfig config = make_boost_config(opt);
    require_usage(opt.splits >= 1, "--splits must be >= 1");
    require_usage(opt.test_fraction > 0.0 && opt.test_fraction < 1.0,
                  "--test-fraction must be in (0, 1)");

    const FeatureSchema schema = parse_schema(read_file(opt.schema_path));
    std::vector<std::string> extra;
    if (!opt.baseline_col.empty()) {
        extra.push_back(opt.baseline_col);
    }
    const auto loaded = load_inputs(opt.data_path, schema, extra);

    const EvalSummary summary = repeated_split_eval(loaded.dataset, config, opt.splits,
                                                    opt.test_fraction, opt.seed);
    write_file_atomic(opt.out_path, eval_report_csv(summary));
    std::cout << "evaluation over " << opt.splits << " splits: mean MAE "
              << format_double(summary.mean_mae) << ", mean Pearson "
              << format_double(summary.mean_pearson) << "; report written to " << opt.out_path
              << "\n";

    if (!opt.baseline_col.empty()) {
        const auto& baseline_values = loaded.extra_columns.front().second;
        const auto baseline = baseline_column_metrics(loaded.dataset, baseline_values);
        const std::filesystem::path out(opt.out_path);
        const std::filesystem::path comparison_path =
            out.parent_path() / (out.stem().string() + "_comparison" + out.extension().string());
        write_file_atomic(comparison_path,
                          comparison_table_csv(baseline, summary, opt.splits, opt.test_fraction));
        std::cout << "comparison table written to " << comparison_path.string() << "\n";
    }
    return 0;
}

int run_tune(const CliOptions& opt) {
    BoostConfig config = make_boost_config(opt);
    require_usage(opt.folds >= 2, "--folds must be >= 2");
    const auto m_grid = parse_grid(opt.m_grid, "--m-grid");
    const auto depth_grid = parse_grid(opt.depth_grid, "--depth-grid");

    const FeatureSchema schema = parse_schema(read_file(opt.schema_path));
    const auto loaded = load_inputs(opt.data_path, schema);

    const TuneResult result =
        cv_tune(loaded.dataset, m_grid, depth_grid, opt.folds, opt.seed, config);
    write_file_atomic(opt.out_path, tune_report_csv(result));
    std::cout << "best: iterations=" << result.best_iterations << " depth=" << result.best_depth
              << " cv_mean_mae=" << format_double(result.best_cv_mean_mae)
              << "; grid written to " << opt.out_path << "\n";
    return 0;
}

int run_report(const CliOptions& opt) {
    require_usage(opt.quintile > 0.0 && opt.quintile <= 0.5, "--quintile must be in (0, 0.5]");
    const FeatureSchema schema = parse_schema(read_file(opt.schema_path));
    const auto loaded = load_inputs(opt.data_path, schema);
    const Dataset& dataset = loaded.dataset;
    const std::filesystem::path out_dir(opt.out_path);

    std::vector<std::string> features;
    for (const auto& spec : schema.features()) {
        features.push_back(spec.name);
    }
    histogram_report(dataset, features, out_dir);

    for (const auto& spec : schema.features()) {
        if (spec.kind == ColumnKind::categorical || integer_valued(dataset, spec.name)) {
            write_quintile_report(quintile_report(dataset, spec.name, opt.quintile), out_dir);
        }
    }

    if (!opt.model_path.empty()) {
        const BoostedModel model = load_model(opt.model_path);
        const auto predictions = model.predict(dataset);
        scatter_report(dataset.target(), predictions, out_dir);
    }
    std::cout << "report written to " << out_dir.string() << " (" << dataset.n_rows()
              << " input rows)\n";
    return 0;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"gradient-boosted regression trees for post-fracturing oil-rate forecasting"};
    app.require_subcommand(1);

    CliOptions opt;

    const auto add_boost_flags = [&](CLI::App* cmd, bool with_tree_flags) {
        if (with_tree_flags) {
            cmd->add_option("--iterations", opt.iterations, "boosting iterations M")
                ->capture_default_str();
            cmd->add_option("--depth", opt.depth, "maximum tree depth")->capture_default_str();
        }
        cmd->add_option("--min-leaf", opt.min_leaf, "minimum rows per leaf")
            ->capture_default_str();
        cmd->add_option("--shrinkage", opt.shrinkage, "step damping in (0, 1]")
            ->capture_default_str();
        cmd->add_option("--loss", opt.loss, "training loss")
            ->check(CLI::IsMember({"squared", "absolute"}))
            ->capture_default_str();
        cmd->add_option("--seed", opt.seed, "base random seed")->capture_default_str();
    };

    auto* synth = app.add_subcommand("synth", "generate a synthetic dataset with known ground truth");
    synth->add_option("--out", opt.out_path, "output directory")->required();
    synth->add_option("--rows", opt.rows, "number of rows")->capture_default_str();
    synth->add_option("--seed", opt.synth_seed, "generator seed")->capture_default_str();
    synth->add_option("--noise-sigma", opt.noise_sigma, "target noise sigma (tons/day)")
        ->capture_default_str();
    synth->add_option("--missing-rate", opt.missing_rate, "per-cell missingness rate")
        ->capture_default_str();

    auto* train = app.add_subcommand("train", "fit a boosted model and write the model file");
    train->add_option("--data", opt.data_path, "input CSV")->required();
    train->add_option("--schema", opt.schema_path, "schema config")->required();
    train->add_option("--model", opt.model_path, "output model file")->required();
    add_boost_flags(train, true);

    auto* predict = app.add_subcommand("predict", "score a CSV with a saved model");
    predict->add_option("--data", opt.data_path, "input CSV")->required();
    predict->add_option("--model", opt.model_path, "model file")->required();
    predict->add_option("--out", opt.out_path, "output predictions CSV")->required();

    auto* evaluate = app.add_subcommand(
        "evaluate", "repeated random-split protocol: mean MAE and Pearson over test splits");
    evaluate->add_option("--data", opt.data_path, "input CSV")->required();
    evaluate->add_option("--schema", opt.schema_path, "schema config")->required();
    evaluate->add_option("--out", opt.out_path, "output report CSV")->required();
    add_boost_flags(evaluate, true);
    evaluate->add_option("--splits", opt.splits, "number of random splits")->capture_default_str();
    evaluate->add_option("--test-fraction", opt.test_fraction, "held-out fraction per split")
        ->capture_default_str();
    evaluate->add_option("--baseline-col", opt.baseline_col,
                         "CSV column holding existing-model predictions for the comparison table");

    auto* tune = app.add_subcommand("tune", "cross-validated grid search over iterations and depth");
    tune->add_option("--data", opt.data_path, "input CSV")->required();
    tune->add_option("--schema", opt.schema_path, "schema config")->required();
    tune->add_option("--out", opt.out_path, "output grid CSV")->required();
    add_boost_flags(tune, false);
    tune->add_option("--folds", opt.folds, "cross-validation folds")->capture_default_str();
    tune->add_option("--m-grid", opt.m_grid, "comma-separated iteration grid")
        ->capture_default_str();
    tune->add_option("--depth-grid", opt.depth_grid, "comma-separated depth grid")
        ->capture_default_str();

    auto* report = app.add_subcommand(
        "report", "histograms, best/worst quintile tables, and predicted-vs-actual scatter");
    report->add_option("--data", opt.data_path, "input CSV")->required();
    report->add_option("--schema", opt.schema_path, "schema config")->required();
    report->add_option("--out", opt.out_path, "output directory")->required();
    report->add_option("--model", opt.model_path, "model file for the scatter plot");
    report->add_option("--quintile", opt.quintile, "best/worst fraction q")
        ->capture_default_str();

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (synth->parsed()) return run_synth(opt);
        if (train->parsed()) return run_train(opt);
        if (predict->parsed()) return run_predict(opt);
        if (evaluate->parsed()) return run_evaluate(opt);
        if (tune->parsed()) return run_tune(opt);
        if (report->parsed()) return run_report(opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const FileError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 1;
}

}  // namespace fracboost
