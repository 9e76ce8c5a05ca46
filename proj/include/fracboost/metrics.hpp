#pragma once

#include <span>

namespace fracboost {

// Mean absolute error: sum_i |yhat_i - y_i| / n.
double mae(std::span<const double> y, std::span<const double> yhat);

// Sample Pearson correlation, clamped into [-1, 1]. Throws
// UndefinedCorrelationError when either sequence is constant.
double pearson(std::span<const double> y, std::span<const double> yhat);

}  // namespace fracboost
