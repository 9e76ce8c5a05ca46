// Benchmark comparing the serial reference kernels against the OpenMP path.
// Both must produce bit-identical models; the only difference is wall time.
//
// Usage: fracboost_bench [rows] [features] [iterations] [depth]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fracboost/boosting.hpp"
#include "fracboost/common.hpp"
#include "fracboost/encoding.hpp"
#include "fracboost/eval.hpp"
#include "fracboost/rng.hpp"
#include "fracboost/synth.hpp"
#include "fracboost/tree.hpp"

using namespace fracboost;

namespace {

EncodedMatrix random_matrix(std::size_t n, std::size_t d, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<std::string> names;
    for (std::size_t f = 0; f < d; ++f) {
        names.push_back("f" + std::to_string(f));
    }
    EncodedMatrix matrix(n, std::move(names), {});
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            matrix.at(r, c) = rng.uniform01() < 0.05 ? missing_value() : 10.0 * rng.uniform01();
        }
    }
    return matrix;
}

template <typename F>
double timed_seconds(F&& f) {
    const auto start = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const std::string& name, double serial_s, double parallel_s, bool identical) {
    std::cout.setf(std::ios::fixed);
    std::cout.precision(3);
    std::cout << name << ": serial " << serial_s << " s, openmp " << parallel_s << " s, speedup "
              << serial_s / parallel_s << "x, results " << (identical ? "identical" : "DIFFER")
              << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 2000;
    const std::size_t d = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 40;
    const std::size_t m = argc > 3 ? std::strtoul(argv[3], nullptr, 10) : 100;
    const std::size_t depth = argc > 4 ? std::strtoul(argv[4], nullptr, 10) : 4;

#ifdef _OPENMP
    std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
    std::cout << "threads: 1 (compiled without OpenMP)\n";
#endif
    std::cout << "workload: n=" << n << " d=" << d << " M=" << m << " depth=" << depth << "\n";

    const auto matrix = random_matrix(n, d, 1);
    SplitMix64 rng(2);
    std::vector<double> targets(n);
    for (auto& t : targets) {
        t = 5.0 * rng.normal();
    }

    bool all_identical = true;

    {
        RegressionTree serial_tree;
        RegressionTree parallel_tree;
        const double serial_s =
            timed_seconds([&] { serial_tree = fit_tree(matrix, targets, depth, 5, Execution::serial); });
        const double parallel_s = timed_seconds(
            [&] { parallel_tree = fit_tree(matrix, targets, depth, 5, Execution::parallel); });
        bool identical = serial_tree.nodes().size() == parallel_tree.nodes().size();
        for (std::size_t i = 0; identical && i < serial_tree.nodes().size(); ++i) {
            const auto& a = serial_tree.nodes()[i];
            const auto& b = parallel_tree.nodes()[i];
            identical = a.left == b.left && a.right == b.right && a.feature == b.feature &&
                        a.threshold == b.threshold && a.value == b.value &&
                        a.missing_goes_left == b.missing_goes_left;
        }
        all_identical = all_identical && identical;
        report("single tree fit", serial_s, parallel_s, identical);
    }

    {
        BoostConfig config;
        config.n_iterations = m;
        config.max_depth = depth;
        config.min_leaf = 5;
        config.shrinkage = 0.1;
        BoostedModel serial_model;
        BoostedModel parallel_model;
        const double serial_s =
            timed_seconds([&] { serial_model = fit_gbm(matrix, targets, config, Execution::serial); });
        const double parallel_s = timed_seconds(
            [&] { parallel_model = fit_gbm(matrix, targets, config, Execution::parallel); });
        bool identical = serial_model.training_loss() == parallel_model.training_loss();
        const auto a = serial_model.predict_matrix(matrix, Execution::serial);
        const auto b = parallel_model.predict_matrix(matrix, Execution::parallel);
        identical = identical && a == b;
        all_identical = all_identical && identical;
        report("boosted fit", serial_s, parallel_s, identical);
    }

    {
        SynthSpec spec;
        spec.n_rows = std::max<std::size_t>(n / 4, 100);
        spec.seed = 3;
        const auto data = generate(spec);
        BoostConfig config;
        config.n_iterations = std::max<std::size_t>(m / 4, 10);
        config.max_depth = depth;
        config.min_leaf = 5;
        config.shrinkage = 0.1;
        std::string serial_report;
        std::string parallel_report;
        const double serial_s = timed_seconds([&] {
            serial_report =
                eval_report_csv(repeated_split_eval(data.dataset, config, 8, 0.2, 7, Execution::serial));
        });
        const double parallel_s = timed_seconds([&] {
            parallel_report = eval_report_csv(
                repeated_split_eval(data.dataset, config, 8, 0.2, 7, Execution::parallel));
        });
        const bool identical = serial_report == parallel_report;
        all_identical = all_identical && identical;
        report("repeated-split evaluation (8 splits)", serial_s, parallel_s, identical);
    }

    if (!all_identical) {
        std::cout << "ERROR: serial and openmp paths diverged\n";
        return 1;
    }
    return 0;
}
