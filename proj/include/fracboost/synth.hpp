#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fracboost/dataset.hpp"

namespace fracboost {

// Synthetic fracturing-job dataset with a known response function, used as
// the ground-truth oracle in place of field data.
struct SynthSpec {
    std::size_t n_rows = 2000;
    std::uint64_t seed = 42;
    double noise_sigma = 5.0;    // tons/day
    double missing_rate = 0.05;  // per feature cell, completely at random

    void validate() const;
};

// The built-in schema covers all five feature groups:
//   contractor (categorical, general), stage_count (numeric, general),
//   flow_rate (numeric, job), proppant_manufacturer (categorical, job),
//   gel_loading (numeric, fluid), est_fracture_length (numeric,
//   calculated_hf), permeability / porosity / net_pay (numeric, geological),
//   q_oil (numeric target, tons/day).
FeatureSchema synth_schema();

struct SynthData {
    Dataset dataset;
    std::vector<double> ground_truth;  // f(x) per row, before noise
};

// Deterministic given the seed; rows draw from per-row substreams so
// generation is schedule-independent. The response is
//
//   f(x) = 4.0 + 3.5 * stage_count
//        + 1.3 * sqrt(permeability * net_pay) * (flow_rate / 4.25)
//        + 0.05 * est_fracture_length + 0.8 * gel_loading + 0.3 * porosity
//        + offset(contractor) + offset(proppant_manufacturer)
//
// with offsets A -4.0, B +1.0, C +5.0, D +2.0 and PM-A -1.5, PM-B +0.8,
// PM-C +2.2. The geological-by-job product term means depth-1 trees cannot
// represent f exactly. Targets are f(x) + N(0, noise_sigma); the truth uses
// the unmasked covariates, missingness only hides recorded cells.
SynthData generate(const SynthSpec& spec);

// Irreducible MAE of the perfect predictor: E|N(0, sigma)| = sigma*sqrt(2/pi).
double oracle_mae_floor(const SynthSpec& spec);

}  // namespace fracboost
