#include "fracboost/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fracboost/error.hpp"

namespace fracboost {

double mae(std::span<const double> y, std::span<const double> yhat) {
    if (y.size() != yhat.size()) {
        throw std::invalid_argument("mae: length mismatch");
    }
    if (y.empty()) {
        throw std::invalid_argument("mae: empty input");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        sum += std::abs(yhat[i] - y[i]);
    }
    return sum / static_cast<double>(y.size());
}

double pearson(std::span<const double> y, std::span<const double> yhat) {
    if (y.size() != yhat.size()) {
        throw std::invalid_argument("pearson: length mismatch");
    }
    if (y.size() < 2) {
        throw std::invalid_argument("pearson: need at least 2 points");
    }
    const auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (constant(y) || constant(yhat)) {
        throw UndefinedCorrelationError("pearson: correlation undefined for constant input");
    }

    const auto n = static_cast<double>(y.size());
    double mean_y = 0.0;
    double mean_yhat = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        mean_y += y[i];
        mean_yhat += yhat[i];
    }
    mean_y /= n;
    mean_yhat /= n;

    double covariance = 0.0;
    double var_y = 0.0;
    double var_yhat = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double dy = y[i] - mean_y;
        const double dyhat = yhat[i] - mean_yhat;
        covariance += dy * dyhat;
        var_y += dy * dy;
        var_yhat += dyhat * dyhat;
    }
    if (var_y == 0.0 || var_yhat == 0.0) {
        throw UndefinedCorrelationError("pearson: correlation undefined for constant input");
    }
    return std::clamp(covariance / std::sqrt(var_y * var_yhat), -1.0, 1.0);
}

}  // namespace fracboost
