#include <doctest.h>

#include <cmath>
#include <set>

#include "fracboost/common.hpp"
#include "fracboost/synth.hpp"

using namespace fracboost;

TEST_SUITE("synth") {

TEST_CASE("generation is bit-identical for equal specs") {
    SynthSpec spec;
    spec.n_rows = 200;
    spec.seed = 5;
    const auto a = generate(spec);
    const auto b = generate(spec);
    CHECK(dataset_to_csv(a.dataset) == dataset_to_csv(b.dataset));
    CHECK(a.ground_truth == b.ground_truth);
}

TEST_CASE("different seeds give different data") {
    SynthSpec a;
    a.n_rows = 50;
    a.seed = 1;
    SynthSpec b = a;
    b.seed = 2;
    CHECK(dataset_to_csv(generate(a).dataset) != dataset_to_csv(generate(b).dataset));
}

TEST_CASE("zero noise makes the target equal the ground truth") {
    SynthSpec spec;
    spec.n_rows = 100;
    spec.seed = 9;
    spec.noise_sigma = 0.0;
    const auto data = generate(spec);
    for (std::size_t r = 0; r < spec.n_rows; ++r) {
        CHECK(data.dataset.target()[r] == data.ground_truth[r]);
    }
}

TEST_CASE("missing cells follow the binomial law within three sigmas") {
    SynthSpec spec;
    spec.n_rows = 1000;
    spec.seed = 13;
    spec.missing_rate = 0.1;
    const auto data = generate(spec);
    std::size_t missing = 0;
    const std::size_t n_features = data.dataset.schema().features().size();
    for (std::size_t c = 0; c < n_features; ++c) {
        for (std::size_t r = 0; r < spec.n_rows; ++r) {
            if (data.dataset.column(c).is_missing(r)) {
                ++missing;
            }
        }
    }
    const double cells = static_cast<double>(spec.n_rows * n_features);
    const double expected = 0.1 * cells;
    const double sigma = std::sqrt(cells * 0.1 * 0.9);
    CHECK(std::abs(static_cast<double>(missing) - expected) <= 3.0 * sigma);
    // the target column is never masked
    for (double t : data.dataset.target()) {
        CHECK(std::isfinite(t));
    }
}

TEST_CASE("the schema touches all five feature groups") {
    const auto schema = synth_schema();
    std::set<FeatureGroup> groups;
    for (const auto& spec : schema.features()) {
        groups.insert(spec.group);
    }
    CHECK(groups.size() == 5);
    CHECK(schema.target_name() == "q_oil");
}

TEST_CASE("default spec matches the documented protocol scale") {
    const SynthSpec spec;
    CHECK(spec.n_rows == 2000);
    CHECK(spec.noise_sigma == 5.0);
}

TEST_CASE("oracle floor is sigma times sqrt(2/pi)") {
    SynthSpec silent;
    silent.noise_sigma = 0.0;
    CHECK(oracle_mae_floor(silent) == 0.0);
    SynthSpec unit;
    unit.noise_sigma = 1.0;
    CHECK(std::abs(oracle_mae_floor(unit) - 0.7979) <= 1e-4);
}

TEST_CASE("empirical noise MAE matches the analytic floor within two percent") {
    SynthSpec spec;
    spec.n_rows = 100000;
    spec.seed = 17;
    spec.noise_sigma = 5.0;
    spec.missing_rate = 0.0;
    const auto data = generate(spec);
    double sum = 0.0;
    for (std::size_t r = 0; r < spec.n_rows; ++r) {
        sum += std::abs(data.dataset.target()[r] - data.ground_truth[r]);
    }
    const double empirical = sum / static_cast<double>(spec.n_rows);
    const double floor = oracle_mae_floor(spec);
    CHECK(std::abs(empirical - floor) <= 0.02 * floor);
}

TEST_CASE("spec validation") {
    SynthSpec spec;
    spec.n_rows = 0;
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);
    spec.n_rows = 10;
    spec.missing_rate = 1.0;
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);
    spec.missing_rate = 0.0;
    spec.noise_sigma = -1.0;
    CHECK_THROWS_AS(generate(spec), std::invalid_argument);
}

TEST_CASE("stage counts are skewed toward single-stage jobs") {
    SynthSpec spec;
    spec.n_rows = 2000;
    spec.seed = 23;
    spec.missing_rate = 0.0;
    const auto data = generate(spec);
    const auto& stages = data.dataset.column("stage_count").numeric;
    std::size_t single = 0;
    for (double s : stages) {
        CHECK(s >= 1.0);
        CHECK(s <= 10.0);
        CHECK(s == std::floor(s));
        if (s == 1.0) {
            ++single;
        }
    }
    CHECK(single > spec.n_rows / 3);
}

}  // TEST_SUITE
