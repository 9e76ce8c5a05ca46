#include <doctest.h>

#include "fracboost/error.hpp"
#include "fracboost/schema.hpp"

using namespace fracboost;

TEST_SUITE("data") {

TEST_CASE("parse_schema reads columns, kinds, groups and the target") {
    const auto schema = parse_schema(
        "stage_count,numeric,job\n"
        "contractor,categorical,general\n"
        "q_oil,numeric,calculated_hf,target\n");
    REQUIRE(schema.columns().size() == 3);
    CHECK(schema.features().size() == 2);
    CHECK(schema.target_name() == "q_oil");
    CHECK(schema.features()[0].name == "stage_count");
    CHECK(schema.features()[0].kind == ColumnKind::numeric);
    CHECK(schema.features()[0].group == FeatureGroup::job);
    CHECK(schema.features()[1].kind == ColumnKind::categorical);
    CHECK(schema.target().kind == ColumnKind::numeric);
}

TEST_CASE("parse_schema skips comments and blank lines") {
    const auto schema = parse_schema(
        "# wells drilled 2013-2016\n"
        "\n"
        "porosity,numeric,geological\n"
        "q_oil,numeric,general,target\n");
    CHECK(schema.features().size() == 1);
}

TEST_CASE("two targets are rejected") {
    CHECK_THROWS_AS(parse_schema("a,numeric,job,target\n"
                                 "b,numeric,job,target\n"),
                    SchemaError);
}

TEST_CASE("unknown group token is rejected") {
    CHECK_THROWS_AS(parse_schema("a,numeric,seismic\n"
                                 "y,numeric,general,target\n"),
                    SchemaError);
}

TEST_CASE("unknown kind token is rejected") {
    CHECK_THROWS_AS(parse_schema("a,text,job\n"
                                 "y,numeric,general,target\n"),
                    SchemaError);
}

TEST_CASE("duplicate column names are rejected") {
    CHECK_THROWS_AS(parse_schema("a,numeric,job\n"
                                 "a,numeric,fluid\n"
                                 "y,numeric,general,target\n"),
                    SchemaError);
}

TEST_CASE("missing target declaration is rejected") {
    CHECK_THROWS_AS(parse_schema("a,numeric,job\n"), SchemaError);
}

TEST_CASE("categorical target is rejected") {
    CHECK_THROWS_AS(parse_schema("y,categorical,general,target\n"), SchemaError);
}

TEST_CASE("config text round-trips") {
    const std::string config =
        "stage_count,numeric,job\n"
        "contractor,categorical,general\n"
        "q_oil,numeric,calculated_hf,target\n";
    const auto schema = parse_schema(config);
    CHECK(schema.to_config_text() == config);
}

TEST_CASE("malformed lines are rejected") {
    CHECK_THROWS_AS(parse_schema("just_a_name\n"), SchemaError);
    CHECK_THROWS_AS(parse_schema("a,numeric,job,target,extra\n"), SchemaError);
    CHECK_THROWS_AS(parse_schema("a,numeric,job,banana\n"), SchemaError);
}

}  // TEST_SUITE
