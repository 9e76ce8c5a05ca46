#include <doctest.h>

#include <cmath>

#include "fracboost/loss.hpp"
#include "fracboost/rng.hpp"
#include "support/test_util.hpp"

using namespace fracboost;

TEST_SUITE("boosting") {

TEST_CASE("squared-loss pseudo residuals are plain residuals") {
    const LossFunction loss(LossKind::squared);
    const std::vector<double> y{3, 1};
    const std::vector<double> f{1, 1};
    CHECK(pseudo_residuals(loss, y, f) == std::vector<double>{2, 0});
}

TEST_CASE("absolute-loss pseudo residuals are signs with sign(0) = 0") {
    const LossFunction loss(LossKind::absolute);
    const std::vector<double> y{3, 1, 0};
    const std::vector<double> f{1, 1, 1};
    CHECK(pseudo_residuals(loss, y, f) == std::vector<double>{1, 0, -1});
}

TEST_CASE("pseudo_residuals rejects mismatched lengths") {
    const LossFunction loss(LossKind::squared);
    CHECK_THROWS_AS(pseudo_residuals(loss, std::vector<double>{1}, std::vector<double>{1, 2}),
                    std::invalid_argument);
}

TEST_CASE("losses vanish at the target and are non-negative") {
    SplitMix64 rng(17);
    for (const auto kind : {LossKind::squared, LossKind::absolute}) {
        const LossFunction loss(kind);
        for (int i = 0; i < 50; ++i) {
            const double y = 20.0 * rng.uniform01() - 10.0;
            const double f = 20.0 * rng.uniform01() - 10.0;
            CHECK(loss.evaluate(y, y) == 0.0);
            CHECK(loss.evaluate(y, f) >= 0.0);
        }
    }
}

TEST_CASE("negative gradients match central finite differences") {
    SplitMix64 rng(23);
    for (const auto kind : {LossKind::squared, LossKind::absolute}) {
        const LossFunction loss(kind);
        int checked = 0;
        while (checked < 20) {
            const double y = 20.0 * rng.uniform01() - 10.0;
            const double f = 20.0 * rng.uniform01() - 10.0;
            if (kind == LossKind::absolute && std::abs(y - f) < 1e-3) {
                continue;  // kink
            }
            const double analytic = loss.negative_gradient(y, f);
            const double numeric = testutil::numeric_negative_gradient(loss, y, f, 1e-5);
            CHECK(std::abs(analytic - numeric) <= 1e-6 * std::max(1.0, std::abs(analytic)));
            ++checked;
        }
    }
}

TEST_CASE("squared line search uses the closed form") {
    const LossFunction loss(LossKind::squared);
    const std::vector<double> y{3, 3};
    const std::vector<double> f{1, 1};
    const std::vector<double> h{1, 1};
    CHECK(line_search(loss, y, f, h) == 2.0);
}

TEST_CASE("identically zero h returns a zero step") {
    const std::vector<double> y{1, 2, 3};
    const std::vector<double> f{0, 0, 0};
    const std::vector<double> h{0, 0, 0};
    CHECK(line_search(LossFunction(LossKind::squared), y, f, h) == 0.0);
    CHECK(line_search(LossFunction(LossKind::absolute), y, f, h) == 0.0);
}

TEST_CASE("absolute line search returns the weighted median") {
    const LossFunction loss(LossKind::absolute);
    const std::vector<double> y{1, 5, 9};
    const std::vector<double> f{0, 0, 0};
    const std::vector<double> h{1, 1, 1};
    CHECK(line_search(loss, y, f, h) == 5.0);
}

TEST_CASE("absolute line search handles negative h and zero terms") {
    const LossFunction loss(LossKind::absolute);
    // |(-2) - b*(-1)| is minimized at b = 2; the h = 0 term only shifts the
    // objective by a constant.
    const std::vector<double> y{-2, 100};
    const std::vector<double> f{0, 0};
    const std::vector<double> h{-1, 0};
    CHECK(line_search(loss, y, f, h) == 2.0);
}

TEST_CASE("flat minimizer segments resolve to the smallest point") {
    // Total weight balances exactly between z = 1 and z = 3, so every point
    // of [1, 3] minimizes; the convention picks 1.
    CHECK(weighted_median({{3.0, 1.0}, {1.0, 1.0}}) == 1.0);
}

TEST_CASE("absolute line search minimizes the exact objective") {
    SplitMix64 rng(404);
    const LossFunction loss(LossKind::absolute);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.uniform_below(12);
        std::vector<double> y(n);
        std::vector<double> f(n, 0.0);
        std::vector<double> h(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = 10.0 * rng.uniform01() - 5.0;
            h[i] = rng.uniform01() < 0.2 ? 0.0 : 4.0 * rng.uniform01() - 2.0;
        }
        const double b = line_search(loss, y, f, h);
        const auto objective = [&](double step) {
            double total = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                total += std::abs(y[i] - f[i] - step * h[i]);
            }
            return total;
        };
        const double at_b = objective(b);
        for (double probe : {b - 1.0, b - 1e-3, b + 1e-3, b + 1.0, 0.0}) {
            CHECK(at_b <= objective(probe) + 1e-9);
        }
    }
}

TEST_CASE("optimal constant is the mean or the lower median") {
    const std::vector<double> y{1, 2, 3, 4};
    CHECK(LossFunction(LossKind::squared).optimal_constant(y) == 2.5);
    CHECK(LossFunction(LossKind::absolute).optimal_constant(y) == 2.0);  // lower median
    const std::vector<double> odd{9, 1, 5};
    CHECK(LossFunction(LossKind::absolute).optimal_constant(odd) == 5.0);
}

TEST_CASE("optimal constant of a constant vector is exact") {
    const std::vector<double> y(3, 0.1);
    CHECK(LossFunction(LossKind::squared).optimal_constant(y) == 0.1);
    CHECK(LossFunction(LossKind::absolute).optimal_constant(y) == 0.1);
}

TEST_CASE("loss kind parses and prints") {
    CHECK(parse_loss_kind("squared") == LossKind::squared);
    CHECK(parse_loss_kind("absolute") == LossKind::absolute);
    CHECK(to_string(LossKind::absolute) == "absolute");
    CHECK_THROWS_AS(parse_loss_kind("huber"), std::invalid_argument);
}

}  // TEST_SUITE
