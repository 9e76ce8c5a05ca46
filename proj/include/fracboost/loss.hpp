#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracboost {

enum class LossKind { squared, absolute };

LossKind parse_loss_kind(std::string_view token);
std::string to_string(LossKind kind);

// Pointwise loss with its negative gradient and loss-optimal constant.
//   squared:  L(y, f) = (y - f)^2 / 2,  -dL/df = y - f,   constant = mean
//   absolute: L(y, f) = |y - f|,        -dL/df = sign(y-f), constant = median
// sign(0) is 0; the median is the smallest minimizer (lower median).
class LossFunction {
public:
    explicit LossFunction(LossKind kind) : kind_(kind) {}

    LossKind kind() const { return kind_; }
    double evaluate(double y, double prediction) const;
    double negative_gradient(double y, double prediction) const;
    double optimal_constant(std::span<const double> y) const;
    double mean_loss(std::span<const double> y, std::span<const double> predictions) const;

private:
    LossKind kind_;
};

// Element i is -dL(y_i, f_i)/df_i, the anti-gradient the next tree fits.
std::vector<double> pseudo_residuals(const LossFunction& loss, std::span<const double> y,
                                     std::span<const double> predictions);

// Exact one-dimensional minimizer of sum_i L(y_i, f_i + b * h_i).
//   squared:  b = sum(r h) / sum(h^2) with r = y - f
//   absolute: weighted median of (y_i - f_i)/h_i with weights |h_i| over
//             h_i != 0, returning the smallest minimizer on flat segments
// Returns 0 when h is identically zero.
double line_search(const LossFunction& loss, std::span<const double> y,
                   std::span<const double> predictions, std::span<const double> h);

// Smallest b minimizing sum_i w_i |z_i - b| (w_i > 0). Exposed for the
// absolute-loss constant and step-size paths.
double weighted_median(std::vector<std::pair<double, double>> value_weight_pairs);

}  // namespace fracboost
