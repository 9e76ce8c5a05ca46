#include <doctest.h>

#include <cmath>

#include "fracboost/error.hpp"
#include "fracboost/metrics.hpp"
#include "fracboost/rng.hpp"

using namespace fracboost;

TEST_SUITE("eval") {

TEST_CASE("mae hand-computed examples are exact") {
    const std::vector<double> y1{4, 5, 6};
    CHECK(mae(y1, y1) == 0.0);
    CHECK(mae(std::vector<double>{0, 0}, std::vector<double>{1, -1}) == 1.0);
    CHECK(mae(std::vector<double>{2, 4, 6}, std::vector<double>{2, 4, 9}) == 1.0);
}

TEST_CASE("mae rejects empty and mismatched input") {
    CHECK_THROWS_AS(mae({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(mae(std::vector<double>{1}, std::vector<double>{1, 2}),
                    std::invalid_argument);
}

TEST_CASE("mae is translation invariant") {
    SplitMix64 rng(5150);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + rng.uniform_below(20);
        std::vector<double> y(n);
        std::vector<double> yhat(n);
        std::vector<double> y_shift(n);
        std::vector<double> yhat_shift(n);
        const double c = 100.0 * rng.uniform01() - 50.0;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = 10.0 * rng.normal();
            yhat[i] = 10.0 * rng.normal();
            y_shift[i] = y[i] + c;
            yhat_shift[i] = yhat[i] + c;
        }
        CHECK(mae(y_shift, yhat_shift) == doctest::Approx(mae(y, yhat)).epsilon(1e-12));
    }
}

TEST_CASE("pearson of an affine image is one") {
    const std::vector<double> y{1, 2, 3, 5, 8};
    std::vector<double> yhat;
    for (double v : y) {
        yhat.push_back(2.0 * v + 3.0);
    }
    CHECK(std::abs(pearson(y, yhat) - 1.0) <= 1e-12);
}

TEST_CASE("pearson of a sign flip is minus one") {
    const std::vector<double> y{1, 2, 3, 5, 8};
    std::vector<double> yhat;
    for (double v : y) {
        yhat.push_back(-v);
    }
    CHECK(std::abs(pearson(y, yhat) + 1.0) <= 1e-12);
}

TEST_CASE("pearson hand-computed example") {
    const std::vector<double> y{1, 2, 3};
    const std::vector<double> yhat{1, 3, 2};
    CHECK(std::abs(pearson(y, yhat) - 0.5) <= 1e-12);
}

TEST_CASE("pearson on constant input raises the documented error") {
    const std::vector<double> constant{4, 4, 4};
    const std::vector<double> varying{1, 2, 3};
    CHECK_THROWS_AS(pearson(constant, varying), UndefinedCorrelationError);
    CHECK_THROWS_AS(pearson(varying, constant), UndefinedCorrelationError);
}

TEST_CASE("pearson needs at least two points") {
    CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{1}),
                    std::invalid_argument);
}

TEST_CASE("pearson is invariant under positive affine maps and negates under flips") {
    SplitMix64 rng(616);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 3 + rng.uniform_below(30);
        std::vector<double> y(n);
        std::vector<double> yhat(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng.normal();
            yhat[i] = rng.normal();
        }
        const double r = pearson(y, yhat);
        const double scale = 0.5 + 4.0 * rng.uniform01();
        const double shift = 10.0 * rng.normal();
        std::vector<double> mapped(n);
        for (std::size_t i = 0; i < n; ++i) {
            mapped[i] = scale * yhat[i] + shift;
        }
        CHECK(pearson(y, mapped) == doctest::Approx(r).epsilon(1e-9));
        for (std::size_t i = 0; i < n; ++i) {
            mapped[i] = -scale * yhat[i] + shift;
        }
        CHECK(pearson(y, mapped) == doctest::Approx(-r).epsilon(1e-9));
    }
}

TEST_CASE("pearson stays within [-1, 1]") {
    SplitMix64 rng(8899);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 2 + rng.uniform_below(10);
        std::vector<double> y(n);
        std::vector<double> yhat(n);
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng.normal();
            yhat[i] = rng.normal();
        }
        const double r = pearson(y, yhat);
        CHECK(r >= -1.0);
        CHECK(r <= 1.0);
    }
}

}  // TEST_SUITE
