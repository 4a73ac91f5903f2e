#ifndef DICOLA_BENCH_HPP
#define DICOLA_BENCH_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dicola/metrics.hpp"

namespace dicola {

enum class TesterKind { Oracle, FisherZ };

struct ExperimentConfig {
    std::uint64_t seed = 1;
    int n = 40;
    double avg_degree = 3.0;
    int n_latent = 2;
    int n_samples = 2000;
    double alpha = 0.01;
    int reps = 20;
    std::vector<std::string> methods{"fci", "dicola+fci"};
    std::optional<int> max_cond;
    double timeout_factor = 10.0;
    int workers = 1;
    TesterKind tester = TesterKind::FisherZ;

    double timeout_seconds() const { return timeout_factor * n; }
    /// Throws InputError on out-of-range fields or unknown methods.
    void validate() const;
};

inline const std::vector<std::string> kMethods{"fci", "dicola+fci"};

struct RunRow {
    int rep = 0;
    std::uint64_t seed = 0;
    std::string method;
    int n = 0;
    int n_latent = 0;
    int n_samples = 0;
    std::uint64_t ci_tests = 0;
    double wall_seconds = 0.0;
    SkeletonMetrics metrics;
    bool timeout = false;
    std::string error;  // empty on success
};

struct MethodSummary {
    std::string method;
    int runs = 0;
    int completed = 0;
    int timeouts = 0;
    int errors = 0;
    double timeout_rate = 0.0;
    double mean_ci_tests = 0.0, sd_ci_tests = 0.0;
    double mean_wall_seconds = 0.0, sd_wall_seconds = 0.0;
    double mean_precision = 0.0, sd_precision = 0.0;
    double mean_recall = 0.0, sd_recall = 0.0;
    double mean_f1 = 0.0, sd_f1 = 0.0;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<RunRow> rows;  // by repetition, then by method order
    std::vector<MethodSummary> summary;
};

/// Seed of repetition `rep`, derived from the master seed only.
std::uint64_t repetition_seed(std::uint64_t master, int rep);

/// Timed-out and failed runs count toward the run total but not the means.
std::vector<MethodSummary> summarize(const std::vector<RunRow>& rows, const std::vector<std::string>& methods);

ExperimentReport run_experiment(const ExperimentConfig& cfg);

/// Header `seed,method,n,n_latent,n_samples,ci_tests,wall_seconds,precision,recall,f1,timeout,error`.
std::string rows_csv(const std::vector<RunRow>& rows);
std::string summary_json(const ExperimentReport& report, int indent = 2);

}  // namespace dicola

#endif  // DICOLA_BENCH_HPP
