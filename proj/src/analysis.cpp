#include "fracboost/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "fracboost/common.hpp"
#include "fracboost/error.hpp"
#include "fracboost/io_util.hpp"

namespace fracboost {
namespace {

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

constexpr double kSvgWidth = 640.0;
constexpr double kSvgHeight = 480.0;
constexpr double kMargin = 56.0;

struct AxisScale {
    double lo = 0.0;
    double hi = 1.0;
    double span() const { return hi > lo ? hi - lo : 1.0; }
};

double scale_x(const AxisScale& axis, double v) {
    return kMargin + (v - axis.lo) / axis.span() * (kSvgWidth - 2 * kMargin);
}

double scale_y(const AxisScale& axis, double v) {
    return kSvgHeight - kMargin - (v - axis.lo) / axis.span() * (kSvgHeight - 2 * kMargin);
}

std::string svg_open(const std::string& title) {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
                      "viewBox=\"0 0 640 480\">\n";
    out += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    out += "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"15\">" + xml_escape(title) + "</text>\n";
    return out;
}

std::string svg_axes(const std::string& x_label, const std::string& y_label) {
    std::string out;
    out += "<line x1=\"" + format_double(kMargin) + "\" y1=\"" + format_double(kSvgHeight - kMargin) +
           "\" x2=\"" + format_double(kSvgWidth - kMargin) + "\" y2=\"" +
           format_double(kSvgHeight - kMargin) + "\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + format_double(kMargin) + "\" y1=\"" + format_double(kMargin) +
           "\" x2=\"" + format_double(kMargin) + "\" y2=\"" + format_double(kSvgHeight - kMargin) +
           "\" stroke=\"black\"/>\n";
    out += "<text x=\"320\" y=\"470\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\">" + xml_escape(x_label) + "</text>\n";
    out += "<text x=\"16\" y=\"240\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"13\" transform=\"rotate(-90 16 240)\">" + xml_escape(y_label) +
           "</text>\n";
    return out;
}

std::string tick_label(double x, double y, const std::string& text, bool vertical_axis) {
    return "<text x=\"" + format_double(x) + "\" y=\"" + format_double(y) +
           "\" text-anchor=\"" + (vertical_axis ? "end" : "middle") +
           "\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(text) + "</text>\n";
}

// Linear-interpolation quantile over sorted values (R type 7).
double sorted_quantile(const std::vector<double>& sorted, double p) {
    if (sorted.size() == 1) {
        return sorted.front();
    }
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
}

CategoricalSlice slice_from_counts(std::map<std::string, std::size_t> counts,
                                   std::vector<std::pair<double, std::string>> numeric_labels,
                                   std::size_t missing, std::size_t n_rows) {
    CategoricalSlice slice;
    slice.missing_count = missing;
    slice.n_rows = n_rows;
    if (!numeric_labels.empty()) {
        // numeric labels sort by value, not lexicographically
        std::sort(numeric_labels.begin(), numeric_labels.end());
        for (const auto& [value, label] : numeric_labels) {
            slice.labels.push_back(label);
            slice.counts.push_back(counts.at(label));
        }
    } else {
        for (auto& [label, count] : counts) {
            slice.labels.push_back(label);
            slice.counts.push_back(count);
        }
    }
    const std::size_t present = std::accumulate(slice.counts.begin(), slice.counts.end(),
                                                std::size_t{0});
    slice.frequencies.reserve(slice.counts.size());
    for (std::size_t c : slice.counts) {
        slice.frequencies.push_back(static_cast<double>(c) / static_cast<double>(present));
    }
    return slice;
}

}  // namespace

QuintilePartition quintile_partition(std::span<const double> targets, double q) {
    if (!(q > 0.0 && q <= 0.5)) {
        throw std::invalid_argument("quintile_partition: q must be in (0, 0.5]");
    }
    if (targets.size() < 2) {
        throw std::invalid_argument("quintile_partition: need at least 2 rows");
    }
    std::vector<std::size_t> order(targets.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return targets[a] > targets[b]; });

    const auto k = static_cast<std::size_t>(std::floor(q * static_cast<double>(targets.size())));
    QuintilePartition partition;
    partition.best.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
    partition.worst.assign(order.end() - static_cast<std::ptrdiff_t>(k), order.end());
    std::sort(partition.best.begin(), partition.best.end());
    std::sort(partition.worst.begin(), partition.worst.end());
    return partition;
}

bool integer_valued(const Dataset& dataset, std::string_view feature) {
    const Column& col = dataset.column(feature);
    if (col.kind != ColumnKind::numeric) {
        return false;
    }
    std::size_t distinct_limit = 25;
    std::map<double, bool> seen;
    for (double v : col.numeric) {
        if (is_missing(v)) {
            continue;
        }
        if (v != std::floor(v)) {
            return false;
        }
        seen.emplace(v, true);
        if (seen.size() > distinct_limit) {
            return false;
        }
    }
    return !seen.empty();
}

CategoricalSlice categorical_distribution(const Dataset& dataset, std::string_view feature,
                                          std::span<const std::size_t> indices) {
    if (indices.empty()) {
        throw std::invalid_argument("categorical_distribution: empty row subset");
    }
    const Column& col = dataset.column(feature);

    std::map<std::string, std::size_t> counts;
    std::vector<std::pair<double, std::string>> numeric_labels;
    std::size_t missing = 0;
    for (std::size_t idx : indices) {
        if (idx >= dataset.n_rows()) {
            throw DataError("categorical_distribution: row index out of range");
        }
        if (col.is_missing(idx)) {
            ++missing;
            continue;
        }
        if (col.kind == ColumnKind::categorical) {
            ++counts[col.categorical[idx]];
        } else {
            const std::string label = format_double(col.numeric[idx]);
            if (counts.emplace(label, 0).second) {
                numeric_labels.emplace_back(col.numeric[idx], label);
            }
            ++counts[label];
        }
    }
    if (counts.empty()) {
        throw DataError("categorical_distribution: subset of '" + std::string(feature) +
                        "' has no present values");
    }
    return slice_from_counts(std::move(counts), std::move(numeric_labels), missing, indices.size());
}

QuintileReport quintile_report(const Dataset& dataset, std::string_view feature, double q) {
    const auto partition = quintile_partition(dataset.target(), q);
    const auto best = categorical_distribution(dataset, feature, partition.best);
    const auto worst = categorical_distribution(dataset, feature, partition.worst);

    QuintileReport report;
    report.feature_name = std::string(feature);
    report.q = q;
    report.missing_best = best.missing_count;
    report.missing_worst = worst.missing_count;

    // Union of labels, keeping each slice's own ordering preference.
    std::vector<std::string> labels = best.labels;
    for (const auto& label : worst.labels) {
        if (std::find(labels.begin(), labels.end(), label) == labels.end()) {
            labels.push_back(label);
        }
    }
    if (dataset.column(feature).kind == ColumnKind::numeric) {
        std::sort(labels.begin(), labels.end(), [](const std::string& a, const std::string& b) {
            return parse_double(a) < parse_double(b);
        });
    } else {
        std::sort(labels.begin(), labels.end());
    }

    for (const auto& label : labels) {
        const auto find_in = [&](const CategoricalSlice& slice, std::size_t& count, double& freq) {
            const auto it = std::find(slice.labels.begin(), slice.labels.end(), label);
            if (it == slice.labels.end()) {
                count = 0;
                freq = 0.0;
            } else {
                const auto pos = static_cast<std::size_t>(it - slice.labels.begin());
                count = slice.counts[pos];
                freq = slice.frequencies[pos];
            }
        };
        std::size_t count_best = 0;
        std::size_t count_worst = 0;
        double freq_best = 0.0;
        double freq_worst = 0.0;
        find_in(best, count_best, freq_best);
        find_in(worst, count_worst, freq_worst);
        report.labels.push_back(label);
        report.count_best.push_back(count_best);
        report.count_worst.push_back(count_worst);
        report.freq_best.push_back(freq_best);
        report.freq_worst.push_back(freq_worst);
    }
    return report;
}

std::filesystem::path write_quintile_report(const QuintileReport& report,
                                            const std::filesystem::path& directory) {
    std::string csv = "category,count_best,freq_best,count_worst,freq_worst\n";
    for (std::size_t i = 0; i < report.labels.size(); ++i) {
        csv += report.labels[i] + "," + std::to_string(report.count_best[i]) + "," +
               format_double(report.freq_best[i]) + "," + std::to_string(report.count_worst[i]) +
               "," + format_double(report.freq_worst[i]) + "\n";
    }
    csv += "missing," + std::to_string(report.missing_best) + ",," +
           std::to_string(report.missing_worst) + ",\n";
    const auto path = directory / ("quintile_" + report.feature_name + ".csv");
    write_file_atomic(path, csv);
    return path;
}

Histogram compute_numeric_histogram(std::span<const double> values) {
    Histogram hist;
    std::vector<double> present;
    present.reserve(values.size());
    for (double v : values) {
        if (is_missing(v)) {
            ++hist.missing_count;
        } else {
            present.push_back(v);
        }
    }
    if (present.empty()) {
        throw DataError("histogram: no present values");
    }
    std::sort(present.begin(), present.end());
    const double lo = present.front();
    const double hi = present.back();

    std::size_t n_bins = 1;
    if (hi > lo) {
        const double iqr = sorted_quantile(present, 0.75) - sorted_quantile(present, 0.25);
        if (iqr > 0.0) {
            const double width =
                2.0 * iqr / std::cbrt(static_cast<double>(present.size()));
            n_bins = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::ceil((hi - lo) / width)));
            n_bins = std::min<std::size_t>(n_bins, 200);
        } else {
            n_bins = 10;
        }
    }

    hist.edges.resize(n_bins + 1);
    for (std::size_t i = 0; i <= n_bins; ++i) {
        hist.edges[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n_bins);
    }
    hist.counts.assign(n_bins, 0);
    const double span = hi > lo ? hi - lo : 1.0;
    for (double v : present) {
        auto bin = static_cast<std::size_t>((v - lo) / span * static_cast<double>(n_bins));
        bin = std::min(bin, n_bins - 1);
        ++hist.counts[bin];
    }
    return hist;
}

void scatter_report(std::span<const double> y, std::span<const double> yhat,
                    const std::filesystem::path& directory) {
    if (y.size() != yhat.size()) {
        throw std::invalid_argument("scatter_report: length mismatch");
    }
    if (y.empty()) {
        throw std::invalid_argument("scatter_report: empty input");
    }

    std::string csv = "actual,predicted\n";
    for (std::size_t i = 0; i < y.size(); ++i) {
        csv += format_double(y[i]) + "," + format_double(yhat[i]) + "\n";
    }
    write_file_atomic(directory / "scatter.csv", csv);

    AxisScale axis;
    axis.lo = std::min(*std::min_element(y.begin(), y.end()),
                       *std::min_element(yhat.begin(), yhat.end()));
    axis.hi = std::max(*std::max_element(y.begin(), y.end()),
                       *std::max_element(yhat.begin(), yhat.end()));

    std::string svg = svg_open("Predicted vs actual");
    svg += svg_axes("actual", "predicted");
    svg += "<line x1=\"" + format_double(scale_x(axis, axis.lo)) + "\" y1=\"" +
           format_double(scale_y(axis, axis.lo)) + "\" x2=\"" +
           format_double(scale_x(axis, axis.hi)) + "\" y2=\"" +
           format_double(scale_y(axis, axis.hi)) + "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    for (std::size_t i = 0; i < y.size(); ++i) {
        svg += "<circle cx=\"" + format_double(scale_x(axis, y[i])) + "\" cy=\"" +
               format_double(scale_y(axis, yhat[i])) +
               "\" r=\"3\" fill=\"steelblue\" fill-opacity=\"0.6\"/>\n";
    }
    svg += tick_label(scale_x(axis, axis.lo), kSvgHeight - kMargin + 16, format_double(axis.lo), false);
    svg += tick_label(scale_x(axis, axis.hi), kSvgHeight - kMargin + 16, format_double(axis.hi), false);
    svg += tick_label(kMargin - 6, scale_y(axis, axis.lo), format_double(axis.lo), true);
    svg += tick_label(kMargin - 6, scale_y(axis, axis.hi), format_double(axis.hi), true);
    svg += "</svg>\n";
    write_file_atomic(directory / "scatter.svg", svg);
}

namespace {

void write_bar_svg(const std::filesystem::path& path, const std::string& title,
                   const std::vector<std::string>& labels,
                   const std::vector<std::size_t>& counts) {
    const std::size_t max_count = *std::max_element(counts.begin(), counts.end());
    AxisScale axis{0.0, static_cast<double>(std::max<std::size_t>(max_count, 1))};

    std::string svg = svg_open(title);
    svg += svg_axes("", "count");
    const double plot_width = kSvgWidth - 2 * kMargin;
    const double slot = plot_width / static_cast<double>(labels.size());
    const double bar_width = slot * 0.8;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double x = kMargin + slot * static_cast<double>(i) + slot * 0.1;
        const double top = scale_y(axis, static_cast<double>(counts[i]));
        const double height = (kSvgHeight - kMargin) - top;
        svg += "<rect x=\"" + format_double(x) + "\" y=\"" + format_double(top) + "\" width=\"" +
               format_double(bar_width) + "\" height=\"" + format_double(height) +
               "\" fill=\"steelblue\"/>\n";
        if (labels.size() <= 24) {
            svg += tick_label(x + bar_width / 2, kSvgHeight - kMargin + 16, labels[i], false);
        }
    }
    svg += tick_label(kMargin - 6, scale_y(axis, axis.hi), std::to_string(max_count), true);
    svg += tick_label(kMargin - 6, scale_y(axis, 0.0), "0", true);
    svg += "</svg>\n";
    write_file_atomic(path, svg);
}

}  // namespace

void histogram_report(const Dataset& dataset, const std::vector<std::string>& features,
                      const std::filesystem::path& directory) {
    std::vector<std::size_t> all_rows(dataset.n_rows());
    std::iota(all_rows.begin(), all_rows.end(), std::size_t{0});

    for (const auto& feature : features) {
        const Column& col = dataset.column(feature);  // throws on unknown feature
        if (col.kind == ColumnKind::categorical) {
            const auto slice = categorical_distribution(dataset, feature, all_rows);
            std::string csv = "category,count\n";
            for (std::size_t i = 0; i < slice.labels.size(); ++i) {
                csv += slice.labels[i] + "," + std::to_string(slice.counts[i]) + "\n";
            }
            csv += "missing," + std::to_string(slice.missing_count) + "\n";
            write_file_atomic(directory / ("hist_" + feature + ".csv"), csv);
            write_bar_svg(directory / ("hist_" + feature + ".svg"), feature, slice.labels,
                          slice.counts);
            continue;
        }
        const auto hist = compute_numeric_histogram(col.numeric);
        std::string csv = "bin_lo,bin_hi,count\n";
        std::vector<std::string> labels;
        for (std::size_t b = 0; b < hist.counts.size(); ++b) {
            csv += format_double(hist.edges[b]) + "," + format_double(hist.edges[b + 1]) + "," +
                   std::to_string(hist.counts[b]) + "\n";
            labels.push_back(format_double(hist.edges[b]));
        }
        csv += "missing,," + std::to_string(hist.missing_count) + "\n";
        write_file_atomic(directory / ("hist_" + feature + ".csv"), csv);
        write_bar_svg(directory / ("hist_" + feature + ".svg"), feature, labels, hist.counts);
    }
}

}  // namespace fracboost
