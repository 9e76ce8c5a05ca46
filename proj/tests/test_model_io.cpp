#include <doctest.h>

#include <cstring>

#include "fracboost/common.hpp"
#include "fracboost/error.hpp"
#include "fracboost/model_io.hpp"
#include "fracboost/rng.hpp"
#include "fracboost/synth.hpp"
#include "support/test_util.hpp"

using namespace fracboost;

namespace {

BoostedModel trained_fixture() {
    SynthSpec spec;
    spec.n_rows = 120;
    spec.seed = 7;
    spec.noise_sigma = 3.0;
    spec.missing_rate = 0.1;
    const auto data = generate(spec);
    BoostConfig config;
    config.n_iterations = 25;
    config.max_depth = 3;
    config.shrinkage = 0.1;
    return train_model(data.dataset, config);
}

}  // namespace

TEST_SUITE("boosting") {

TEST_CASE("round-trip decimal text restores every double bit") {
    SplitMix64 rng(12345);
    int checked = 0;
    while (checked < 2000) {
        const std::uint64_t bits = rng.next();
        double value = 0.0;
        std::memcpy(&value, &bits, sizeof value);
        if (!std::isfinite(value)) {
            continue;
        }
        CHECK(parse_double(format_double(value)) == value);
        ++checked;
    }
    CHECK(parse_double(format_double(0.1)) == 0.1);
    CHECK(parse_double(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("serialize/deserialize is a fixed point") {
    const auto model = trained_fixture();
    const std::string text = serialize_model(model);
    const auto reloaded = deserialize_model(text);
    CHECK(serialize_model(reloaded) == text);
}

TEST_CASE("loaded models predict bit-identically, missing and unseen included") {
    const auto model = trained_fixture();
    const auto reloaded = deserialize_model(serialize_model(model));

    SynthSpec spec;
    spec.n_rows = 200;
    spec.seed = 99;
    spec.noise_sigma = 3.0;
    spec.missing_rate = 0.25;
    auto csv = dataset_to_csv(generate(spec).dataset);
    csv += "ZZ-new,2,4.5,PM-X,3.5,90,2.5,18,9,12\n";
    const auto query = load_dataset(csv, model.schema()).dataset;

    const auto a = model.predict(query);
    const auto b = reloaded.predict(query);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i] == b[i]);
    }
}

TEST_CASE("save and load via files") {
    testutil::TempDir tmp("model_io");
    const auto model = trained_fixture();
    const auto path = tmp.path() / "model.txt";
    save_model(model, path);
    const auto reloaded = load_model(path);
    CHECK(serialize_model(reloaded) == serialize_model(model));
}

TEST_CASE("loading a missing file raises FileError") {
    CHECK_THROWS_AS(load_model("/nonexistent/fracboost/model.txt"), FileError);
}

TEST_CASE("corrupted model text is rejected") {
    const auto model = trained_fixture();
    const std::string text = serialize_model(model);

    CHECK_THROWS_AS(deserialize_model("not a model\n"), DataError);
    CHECK_THROWS_AS(deserialize_model(text.substr(0, text.size() / 2)), DataError);

    std::string wrong_version = text;
    wrong_version.replace(wrong_version.find(" 1\n"), 3, " 9\n");
    CHECK_THROWS_AS(deserialize_model(wrong_version), DataError);

    std::string bad_count = text;
    const auto pos = bad_count.find("n_features ");
    bad_count.replace(pos, bad_count.find('\n', pos) - pos, "n_features 999");
    CHECK_THROWS_AS(deserialize_model(bad_count), DataError);
}

TEST_CASE("serializing a schemaless model is rejected") {
    const BoostedModel bare(1.0, 0.5, LossKind::squared, {}, {}, {"f0"});
    CHECK_THROWS_AS(serialize_model(bare), DataError);
}

}  // TEST_SUITE
