#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "levymoduli/structure_function.hpp"

namespace levymoduli {

inline constexpr const char* kToolkitVersion = "0.1.0";

// One Monte Carlo (or pure-quadrature) verification experiment.
struct ExperimentConfig {
    std::string kind;  // gaussian-mean | gaussian-convergence | squared-gaussian |
                       // localtime-convergence | quadratic-variation | lm-decay |
                       // covariance-bound

    // Family: exactly one of r (fBm sigma^2 = h^r) or beta (stable index) is
    // meaningful per kind; brownian_half selects psi = lambda^2/2 instead of
    // the canonical stable family.
    double r = 0.0;
    double beta = 0.0;
    bool brownian_half = false;

    double p = 2.0;
    double a = 0.0;
    double b = 1.0;
    double t = 1.0;                 // Levy horizon
    std::vector<double> t_grid;     // lm-decay probe times
    int m_moment = 1;               // lm-decay L^m exponent

    std::size_t n = 1 << 12;        // grid steps (spatial for Gaussian, time for Levy)
    double eps = 0.0;               // local-time bin width; 0 = resolution rule default
    std::size_t qv_m = 128;         // quadratic-variation spacing 1/m

    // h values as multiples of the base spacing (dx or eps), strictly decreasing.
    std::vector<double> h_multiples = {16.0, 4.0, 1.0};

    std::size_t replicas = 200;
    std::uint64_t seed = 1;
    double tolerance = 0.1;           // relative band for ratio verdicts
    double variance_decay_factor = 1.2;
    // Full-support windows (per-replica realized range) instead of [a, b].
    bool full_support = false;
};

struct ReportRow {
    double h = 0.0;
    double t = 0.0;
    double mean = 0.0;
    double std_dev = 0.0;
    double std_err = 0.0;
    double target = 0.0;
    double z_score = 0.0;
    bool pass = false;
    std::string target_name;  // constant name + producing oracle op
};

struct ExperimentReport {
    ExperimentConfig config;
    std::vector<ReportRow> rows;
    bool pass = false;
    double runtime_sec = 0.0;  // excluded from determinism comparisons
    std::string version = kToolkitVersion;
    std::string notes;

    nlohmann::json to_json() const;
    // The deterministic part only (config + rows + verdict), for byte
    // comparison across reruns.
    std::string payload() const;
    void write_json(const std::string& path) const;
    void write_csv(const std::string& path) const;
};

ExperimentReport run_experiment(const ExperimentConfig& config);

ExperimentReport run_gaussian_mean(const ExperimentConfig& config);
ExperimentReport run_gaussian_convergence(const ExperimentConfig& config);
ExperimentReport run_squared_gaussian(const ExperimentConfig& config);
ExperimentReport run_localtime_convergence(const ExperimentConfig& config);
ExperimentReport run_quadratic_variation(const ExperimentConfig& config);
ExperimentReport run_lm_decay(const ExperimentConfig& config);
ExperimentReport run_covariance_bound(const ExperimentConfig& config);

// Worker cap: min(hardware, LEVY_MODULI_THREADS).
unsigned worker_count();

}  // namespace levymoduli
