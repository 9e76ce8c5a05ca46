#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fracboost/dataset.hpp"

namespace fracboost {

struct QuintilePartition {
    std::vector<std::size_t> best;   // top floor(q*n) rows by target
    std::vector<std::size_t> worst;  // bottom floor(q*n) rows by target
};

// Ranks by target descending, stable by original index, so equal targets put
// the lowest original indices into the best set and the highest into the
// worst. Disjoint by construction for q <= 0.5.
QuintilePartition quintile_partition(std::span<const double> targets, double q);

// Category counts/frequencies over a row subset. Works for categorical
// columns and for integer-valued numeric columns (binned by exact value,
// e.g. stage counts). Missing cells are tallied separately; frequencies are
// over present cells and sum to 1.
struct CategoricalSlice {
    std::vector<std::string> labels;
    std::vector<std::size_t> counts;
    std::vector<double> frequencies;
    std::size_t missing_count = 0;
    std::size_t n_rows = 0;
};
CategoricalSlice categorical_distribution(const Dataset& dataset, std::string_view feature,
                                          std::span<const std::size_t> indices);

// Best/worst-q distributions of one feature, merged over the label union.
struct QuintileReport {
    std::string feature_name;
    double q = 0.2;
    std::vector<std::string> labels;
    std::vector<std::size_t> count_best;
    std::vector<std::size_t> count_worst;
    std::vector<double> freq_best;
    std::vector<double> freq_worst;
    std::size_t missing_best = 0;
    std::size_t missing_worst = 0;
};
QuintileReport quintile_report(const Dataset& dataset, std::string_view feature, double q);

// Writes report/quintile_<feature>.csv; returns the file path.
std::filesystem::path write_quintile_report(const QuintileReport& report,
                                            const std::filesystem::path& directory);

// Freedman-Diaconis histogram; 10 equal bins when IQR is 0, a single bin for
// constant input. Missing values are excluded and counted.
struct Histogram {
    std::vector<double> edges;  // n_bins + 1 edges
    std::vector<std::size_t> counts;
    std::size_t missing_count = 0;
};
Histogram compute_numeric_histogram(std::span<const double> values);

// Scatter of predicted vs actual with the identity line. Emits scatter.svg
// plus a scatter.csv twin holding the exact plotted pairs.
void scatter_report(std::span<const double> y, std::span<const double> yhat,
                    const std::filesystem::path& directory);

// One hist_<feature>.svg + hist_<feature>.csv per feature; numeric features
// are binned, categorical features become bar counts.
void histogram_report(const Dataset& dataset, const std::vector<std::string>& features,
                      const std::filesystem::path& directory);

// True when every non-missing value of a numeric column is an exact integer
// and the cardinality is small enough for exact-value binning.
bool integer_valued(const Dataset& dataset, std::string_view feature);

}  // namespace fracboost
