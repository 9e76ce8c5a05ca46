#include "fracboost/loss.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracboost {
namespace {

void check_equal_lengths(std::size_t a, std::size_t b, const char* where) {
    if (a != b) {
        throw std::invalid_argument(std::string(where) + ": length mismatch");
    }
}

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

}  // namespace

LossKind parse_loss_kind(std::string_view token) {
    if (token == "squared") {
        return LossKind::squared;
    }
    if (token == "absolute") {
        return LossKind::absolute;
    }
    throw std::invalid_argument("loss: unknown kind '" + std::string(token) + "'");
}

std::string to_string(LossKind kind) {
    return kind == LossKind::squared ? "squared" : "absolute";
}

double LossFunction::evaluate(double y, double prediction) const {
    const double r = y - prediction;
    if (kind_ == LossKind::squared) {
        return r * r / 2.0;
    }
    return std::abs(r);
}

double LossFunction::negative_gradient(double y, double prediction) const {
    const double r = y - prediction;
    if (kind_ == LossKind::squared) {
        return r;
    }
    if (r > 0.0) {
        return 1.0;
    }
    if (r < 0.0) {
        return -1.0;
    }
    return 0.0;
}

double LossFunction::optimal_constant(std::span<const double> y) const {
    if (y.empty()) {
        throw std::invalid_argument("loss: optimal_constant on empty input");
    }
    if (kind_ == LossKind::squared) {
        return canonical_mean(std::vector<double>(y.begin(), y.end()));
    }
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(y.size());
    for (double v : y) {
        pairs.emplace_back(v, 1.0);
    }
    return weighted_median(std::move(pairs));
}

double LossFunction::mean_loss(std::span<const double> y,
                               std::span<const double> predictions) const {
    check_equal_lengths(y.size(), predictions.size(), "mean_loss");
    if (y.empty()) {
        throw std::invalid_argument("mean_loss: empty input");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sum += evaluate(y[i], predictions[i]);
    }
    return sum / static_cast<double>(y.size());
}

std::vector<double> pseudo_residuals(const LossFunction& loss, std::span<const double> y,
                                     std::span<const double> predictions) {
    check_equal_lengths(y.size(), predictions.size(), "pseudo_residuals");
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        out[i] = loss.negative_gradient(y[i], predictions[i]);
    }
    return out;
}

double weighted_median(std::vector<std::pair<double, double>> value_weight_pairs) {
    if (value_weight_pairs.empty()) {
        throw std::invalid_argument("weighted_median: empty input");
    }
    std::sort(value_weight_pairs.begin(), value_weight_pairs.end());
    double total = 0.0;
    for (const auto& [z, w] : value_weight_pairs) {
        total += w;
    }
    const double half = total / 2.0;
    double cumulative = 0.0;
    for (const auto& [z, w] : value_weight_pairs) {
        cumulative += w;
        if (cumulative >= half) {
            return z;
        }
    }
    return value_weight_pairs.back().first;
}

double line_search(const LossFunction& loss, std::span<const double> y,
                   std::span<const double> predictions, std::span<const double> h) {
    check_equal_lengths(y.size(), predictions.size(), "line_search");
    check_equal_lengths(y.size(), h.size(), "line_search");

    if (loss.kind() == LossKind::squared) {
        double numerator = 0.0;
        double denominator = 0.0;
        for (std::size_t i = 0; i < y.size(); ++i) {
            numerator += (y[i] - predictions[i]) * h[i];
            denominator += h[i] * h[i];
        }
        if (denominator == 0.0) {
            return 0.0;
        }
        return numerator / denominator;
    }

    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (h[i] != 0.0) {
            pairs.emplace_back((y[i] - predictions[i]) / h[i], std::abs(h[i]));
        }
    }
    if (pairs.empty()) {
        return 0.0;
    }
    return weighted_median(std::move(pairs));
}

}  // namespace fracboost
