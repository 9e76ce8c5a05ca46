#include "fracboost/synth.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "fracboost/common.hpp"
#include "fracboost/rng.hpp"

namespace fracboost {
namespace {

constexpr std::size_t kNumFeatures = 9;

const char* kSchemaConfig =
    "contractor,categorical,general\n"
    "stage_count,numeric,general\n"
    "flow_rate,numeric,job\n"
    "proppant_manufacturer,categorical,job\n"
    "gel_loading,numeric,fluid\n"
    "est_fracture_length,numeric,calculated_hf\n"
    "permeability,numeric,geological\n"
    "porosity,numeric,geological\n"
    "net_pay,numeric,geological\n"
    "q_oil,numeric,general,target\n";

struct RowDraw {
    std::string contractor;
    double contractor_offset;
    double stage_count;
    double flow_rate;
    std::string manufacturer;
    double manufacturer_offset;
    double gel_loading;
    double est_fracture_length;
    double permeability;
    double porosity;
    double net_pay;
    double noise;
    bool missing[kNumFeatures];
};

RowDraw draw_row(SplitMix64& rng, const SynthSpec& spec) {
    RowDraw row{};

    const double u_contractor = rng.uniform01();
    if (u_contractor < 0.35) {
        row.contractor = "A";
        row.contractor_offset = -4.0;
    } else if (u_contractor < 0.65) {
        row.contractor = "B";
        row.contractor_offset = 1.0;
    } else if (u_contractor < 0.85) {
        row.contractor = "C";
        row.contractor_offset = 5.0;
    } else {
        row.contractor = "D";
        row.contractor_offset = 2.0;
    }

    // Skewed toward single-stage jobs, capped at ten stages.
    const double u_stage = rng.uniform01();
    const double extra = std::floor(-1.6 * std::log1p(-u_stage));
    row.stage_count = 1.0 + std::min(extra, 9.0);

    row.flow_rate = 2.5 + 3.5 * rng.uniform01();

    const double u_pm = rng.uniform01();
    if (u_pm < 0.5) {
        row.manufacturer = "PM-A";
        row.manufacturer_offset = -1.5;
    } else if (u_pm < 0.8) {
        row.manufacturer = "PM-B";
        row.manufacturer_offset = 0.8;
    } else {
        row.manufacturer = "PM-C";
        row.manufacturer_offset = 2.2;
    }

    row.gel_loading = 2.0 + 3.5 * rng.uniform01();
    row.est_fracture_length = 40.0 + 140.0 * rng.uniform01();
    row.permeability = std::exp(1.2 + 0.8 * rng.normal());
    row.porosity = 10.0 + 14.0 * rng.uniform01();
    row.net_pay = 2.0 + 16.0 * rng.uniform01();
    row.noise = spec.noise_sigma * rng.normal();

    for (std::size_t c = 0; c < kNumFeatures; ++c) {
        row.missing[c] = rng.uniform01() < spec.missing_rate;
    }
    return row;
}

double response(const RowDraw& row) {
    return 4.0 + 3.5 * row.stage_count +
           1.3 * std::sqrt(row.permeability * row.net_pay) * (row.flow_rate / 4.25) +
           0.05 * row.est_fracture_length + 0.8 * row.gel_loading + 0.3 * row.porosity +
           row.contractor_offset + row.manufacturer_offset;
}

}  // namespace

void SynthSpec::validate() const {
    if (n_rows == 0) {
        throw std::invalid_argument("synth: n_rows must be >= 1");
    }
    if (!(noise_sigma >= 0.0)) {
        throw std::invalid_argument("synth: noise_sigma must be >= 0");
    }
    if (!(missing_rate >= 0.0 && missing_rate < 1.0)) {
        throw std::invalid_argument("synth: missing_rate must be in [0, 1)");
    }
}

FeatureSchema synth_schema() {
    return parse_schema(kSchemaConfig);
}

SynthData generate(const SynthSpec& spec) {
    spec.validate();
    const FeatureSchema schema = synth_schema();

    std::vector<Column> columns(kNumFeatures);
    for (std::size_t c = 0; c < kNumFeatures; ++c) {
        columns[c].kind = schema.features()[c].kind;
        if (columns[c].kind == ColumnKind::numeric) {
            columns[c].numeric.reserve(spec.n_rows);
        } else {
            columns[c].categorical.reserve(spec.n_rows);
        }
    }
    std::vector<double> target;
    target.reserve(spec.n_rows);
    std::vector<double> ground_truth;
    ground_truth.reserve(spec.n_rows);

    for (std::size_t r = 0; r < spec.n_rows; ++r) {
        SplitMix64 rng = substream(spec.seed, r);
        const RowDraw row = draw_row(rng, spec);
        const double truth = response(row);
        ground_truth.push_back(truth);
        target.push_back(truth + row.noise);

        const double numeric_values[kNumFeatures] = {
            0.0,  // contractor (categorical)
            row.stage_count,
            row.flow_rate,
            0.0,  // proppant_manufacturer (categorical)
            row.gel_loading,
            row.est_fracture_length,
            row.permeability,
            row.porosity,
            row.net_pay,
        };
        const std::string* categorical_values[kNumFeatures] = {
            &row.contractor, nullptr, nullptr, &row.manufacturer,
            nullptr,         nullptr, nullptr, nullptr,
            nullptr,
        };
        for (std::size_t c = 0; c < kNumFeatures; ++c) {
            if (columns[c].kind == ColumnKind::numeric) {
                columns[c].numeric.push_back(row.missing[c] ? missing_value() : numeric_values[c]);
            } else {
                columns[c].categorical.push_back(row.missing[c] ? std::string{}
                                                                : *categorical_values[c]);
            }
        }
    }

    return {Dataset(schema, std::move(columns), std::move(target)), std::move(ground_truth)};
}

double oracle_mae_floor(const SynthSpec& spec) {
    spec.validate();
    return spec.noise_sigma * std::sqrt(2.0 / std::numbers::pi);
}

}  // namespace fracboost
