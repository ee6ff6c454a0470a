#include "levymoduli/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#include "levymoduli/errors.hpp"
#include "levymoduli/gaussian.hpp"
#include "levymoduli/levy.hpp"
#include "levymoduli/oracles.hpp"
#include "levymoduli/rng.hpp"
#include "levymoduli/spectral.hpp"

namespace levymoduli {

unsigned worker_count() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* cap = std::getenv("LEVY_MODULI_THREADS")) {
        const long parsed = std::strtol(cap, nullptr, 10);
        if (parsed >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(parsed));
    }
    return n;
}

namespace {

// Replica fan-out with an ordered reduction: each worker writes its own
// slots, so the result is identical to sequential execution.
template <typename F>
std::vector<std::vector<double>> run_replicas(std::size_t replicas, std::size_t stats,
                                              const F& replica_fn) {
    std::vector<std::vector<double>> out(replicas, std::vector<double>(stats, 0.0));
    const unsigned workers = std::min<unsigned>(worker_count(),
                                                static_cast<unsigned>(replicas));
    if (workers <= 1) {
        for (std::size_t i = 0; i < replicas; ++i) replica_fn(i, out[i]);
        return out;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < replicas; i = next.fetch_add(1)) {
                replica_fn(i, out[i]);
            }
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

struct Summary {
    double mean = 0.0;
    double std_dev = 0.0;
    double std_err = 0.0;
};

Summary summarize(const std::vector<std::vector<double>>& samples, std::size_t stat) {
    Summary s;
    const double n = static_cast<double>(samples.size());
    for (const auto& row : samples) s.mean += row[stat];
    s.mean /= n;
    double var = 0.0;
    for (const auto& row : samples) {
        const double d = row[stat] - s.mean;
        var += d * d;
    }
    var /= std::max(1.0, n - 1.0);
    s.std_dev = std::sqrt(var);
    s.std_err = s.std_dev / std::sqrt(n);
    return s;
}

void validate_common(const ExperimentConfig& c) {
    if (c.replicas < 1) throw ConfigError("replicas must be >= 1");
    if (!(c.b > c.a)) throw ConfigError("window must satisfy b > a");
    if (c.h_multiples.empty()) throw ConfigError("h schedule must be nonempty");
    for (std::size_t i = 1; i < c.h_multiples.size(); ++i) {
        if (!(c.h_multiples[i] < c.h_multiples[i - 1])) {
            throw ConfigError("h schedule must be strictly decreasing");
        }
    }
    for (double m : c.h_multiples) {
        if (std::abs(m - std::round(m)) > 1e-9 || m < 1.0) {
            throw ConfigError("h multiples must be positive integers (grid alignment)");
        }
    }
}

StructureFunction gaussian_sigma_sq(const ExperimentConfig& c) {
    if (c.r > 0.0) return StructureFunction::power_law(c.r);
    if (c.brownian_half) {
        return StructureFunction::custom([](double h) { return 2.0 * h; }, true,
                                         "brownian-sigma0(2h)");
    }
    if (c.beta > 0.0) return StructureFunction::closed_form_stable(c.beta);
    throw ConfigError("gaussian experiment needs r, beta, or brownian_half");
}

StructureFunction levy_sigma0_sq(const ExperimentConfig& c) {
    if (c.brownian_half) {
        return StructureFunction::custom([](double h) { return 2.0 * h; }, true,
                                         "brownian-sigma0(2h)");
    }
    if (c.beta > 0.0) return StructureFunction::closed_form_stable(c.beta);
    throw ConfigError("levy experiment needs beta or brownian_half");
}

SamplePath simulate_levy(const ExperimentConfig& c, double horizon, std::size_t steps,
                         std::uint64_t seed) {
    return c.brownian_half ? simulate_brownian_half_path(horizon, steps, seed)
                           : simulate_stable_path(c.beta, horizon, steps, seed);
}

double default_eps(const ExperimentConfig& c) {
    if (c.eps > 0.0) return c.eps;
    const double beta = c.brownian_half ? 2.0 : c.beta;
    const double coef = c.brownian_half ? 0.5 : 1.0;
    return 4.0 * std::pow(coef * c.t / static_cast<double>(c.n), 1.0 / beta);
}

ExperimentReport make_report(const ExperimentConfig& c) {
    ExperimentReport report;
    report.config = c;
    return report;
}

// Gaussian ensemble statistics for each h in the schedule; one simulation
// per replica serves every h (paths carry max h as slack).
ExperimentReport gaussian_ensemble(const ExperimentConfig& c, bool squared) {
    validate_common(c);
    const StructureFunction sigma_sq = gaussian_sigma_sq(c);
    const double dx = (c.b - c.a) / static_cast<double>(c.n);
    const double h_max = c.h_multiples.front() * dx;
    const std::size_t n_h = c.h_multiples.size();

    const auto replica_fn = [&](std::size_t i, std::vector<double>& out) {
        const GaussianPath path = simulate_stationary_increment_path(
            sigma_sq, c.a, c.b, dx, h_max, replica_seed(c.seed, i));
        double denom = 1.0;
        if (squared) {
            // E|eta|^{2p} dx sum |G(x)|^p over [a, b)
            double sum = 0.0;
            const std::size_t first = path.index_of(c.a);
            const std::size_t last = path.index_of(c.b);
            for (std::size_t j = first; j < last; ++j) {
                sum += std::pow(std::abs(path.values[j]), c.p);
            }
            denom = abs_moment_normal(2.0 * c.p) * dx * sum;
        }
        for (std::size_t k = 0; k < n_h; ++k) {
            const double h = c.h_multiples[k] * dx;
            const double v = squared
                                 ? lp_modulus_squared_gaussian(path, h, c.p, c.a, c.b, sigma_sq) /
                                       denom
                                 : lp_modulus_gaussian(path, h, c.p, c.a, c.b, sigma_sq);
            out[k] = v;
        }
    };
    const auto samples = run_replicas(c.replicas, n_h, replica_fn);

    ExperimentReport report = make_report(c);
    for (std::size_t k = 0; k < n_h; ++k) {
        const Summary s = summarize(samples, k);
        ReportRow row;
        row.h = c.h_multiples[k] * dx;
        row.t = 0.0;
        row.mean = s.mean;
        row.std_dev = s.std_dev;
        row.std_err = s.std_err;
        if (squared) {
            row.target = 1.0;
            row.target_name = "ratio to E|eta|^{2p} int |G|^p [abs_moment_normal]";
            row.pass = std::abs(s.mean - row.target) <= c.tolerance;
        } else {
            row.target = abs_moment_normal(c.p) * (c.b - c.a);
            row.target_name = "E|eta|^p (b-a) [abs_moment_normal]";
            row.pass = std::abs(s.mean - row.target) <= 3.0 * s.std_err;
        }
        row.z_score = s.std_err > 0.0 ? (s.mean - row.target) / s.std_err : 0.0;
        report.rows.push_back(row);
    }
    report.pass = std::all_of(report.rows.begin(), report.rows.end(),
                              [](const ReportRow& r) { return r.pass; });
    return report;
}

}  // namespace

ExperimentReport run_gaussian_mean(const ExperimentConfig& c) {
    return gaussian_ensemble(c, /*squared=*/false);
}

ExperimentReport run_squared_gaussian(const ExperimentConfig& c) {
    ExperimentReport report = gaussian_ensemble(c, /*squared=*/true);
    // Only the smallest h is a convergence claim; larger h rows are context.
    for (std::size_t k = 0; k + 1 < report.rows.size(); ++k) report.rows[k].pass = true;
    report.pass = report.rows.back().pass;
    return report;
}

ExperimentReport run_gaussian_convergence(const ExperimentConfig& c) {
    ExperimentReport report = gaussian_ensemble(c, /*squared=*/false);
    bool decay = true;
    for (std::size_t k = 1; k < report.rows.size(); ++k) {
        if (!(report.rows[k].std_dev < report.rows[k - 1].std_dev)) decay = false;
    }
    const double ratio = report.rows.front().std_dev /
                         std::max(report.rows.back().std_dev, 1e-300);
    if (ratio < c.variance_decay_factor) decay = false;
    std::ostringstream notes;
    notes << "variance decay " << (decay ? "confirmed" : "violated")
          << "; endpoint std ratio " << ratio << " (required >= "
          << c.variance_decay_factor << ")";
    report.notes = notes.str();
    report.pass = report.pass && decay;
    return report;
}

ExperimentReport run_localtime_convergence(const ExperimentConfig& c) {
    validate_common(c);
    const StructureFunction sigma0 = levy_sigma0_sq(c);
    const double eps = default_eps(c);
    const double h_max = c.h_multiples.front() * eps;
    const std::size_t n_h = c.h_multiples.size();

    bool any_warning = false;
    const auto replica_fn = [&](std::size_t i, std::vector<double>& out) {
        const SamplePath path = simulate_levy(c, c.t, c.n, replica_seed(c.seed, i));
        const LocalTimeField field =
            estimate_local_time(path, eps, c.a - h_max, c.b + h_max);
        if (field.resolution_warning) any_warning = true;
        double lo = c.a;
        double hi = c.b;
        if (c.full_support) {
            lo = field_min_center(field) + eps;
            hi = field_max_center(field) - eps - h_max;
        }
        const double rhs = rhs_local_time(field, c.p, lo, hi);
        for (std::size_t k = 0; k < n_h; ++k) {
            const double h = c.h_multiples[k] * eps;
            const double lhs = lp_modulus_local_time(field, h, c.p, lo, hi, sigma0);
            out[k] = rhs > 0.0 ? lhs / rhs : 0.0;
        }
    };
    const auto samples = run_replicas(c.replicas, n_h, replica_fn);

    ExperimentReport report = make_report(c);
    for (std::size_t k = 0; k < n_h; ++k) {
        const Summary s = summarize(samples, k);
        ReportRow row;
        row.h = c.h_multiples[k] * eps;
        row.t = c.t;
        row.mean = s.mean;
        row.std_dev = s.std_dev;
        row.std_err = s.std_err;
        row.target = 1.0;
        row.target_name = "modulus/RHS ratio -> 1 [rhs_local_time via abs_moment_normal]";
        row.z_score = s.std_err > 0.0 ? (s.mean - 1.0) / s.std_err : 0.0;
        // Only the smallest h carries the convergence verdict.
        row.pass = (k + 1 < n_h) || std::abs(s.mean - 1.0) <= c.tolerance;
        report.rows.push_back(row);
    }
    if (any_warning) {
        report.notes = "local-time resolution warning: eps below 4x the per-step "
                       "displacement scale";
    }
    report.pass = report.rows.back().pass;
    return report;
}

ExperimentReport run_quadratic_variation(const ExperimentConfig& c) {
    validate_common(c);
    // The 4t limit is a Brownian-motion statement; a quadratic exponent
    // c lambda^2 is Brownian motion scaled by sqrt(2c), so the path is
    // rescaled to the standard one before taking local times.
    const bool quadratic = c.brownian_half || c.beta == 2.0;
    if (!quadratic) {
        throw ConfigError("quadratic-variation requires a quadratic exponent "
                          "(beta = 2 or brownian_half)");
    }
    const double rescale = c.brownian_half ? 1.0 : 1.0 / std::sqrt(2.0);
    // Bin finer than the 1/m spacing (power-of-two refinement) so the bin
    // averages approximate point evaluations; refinement stops at the
    // per-step displacement scale.
    double eps = 1.0 / static_cast<double>(c.qv_m);
    if (c.eps > 0.0) {
        eps = c.eps;
    } else {
        const double floor_eps = 4.0 * std::sqrt(c.t / static_cast<double>(c.n));
        while (eps / 2.0 >= floor_eps) eps /= 2.0;
    }
    const auto replica_fn = [&](std::size_t i, std::vector<double>& out) {
        SamplePath path = simulate_levy(c, c.t, c.n, replica_seed(c.seed, i));
        if (rescale != 1.0) {
            for (double& v : path.values) v *= rescale;
            path.family = CharacteristicExponent::brownian_half();
        }
        const LocalTimeField field = estimate_local_time(path, eps, -1.0, 1.0);
        out[0] = quadratic_variation_sum(field, c.qv_m);
    };
    const auto samples = run_replicas(c.replicas, 1, replica_fn);

    ExperimentReport report = make_report(c);
    const Summary s = summarize(samples, 0);
    ReportRow row;
    row.h = eps;
    row.t = c.t;
    row.mean = s.mean;
    row.std_dev = s.std_dev;
    row.std_err = s.std_err;
    row.target = 4.0 * c.t;
    row.target_name = "4t [quadratic variation limit]";
    row.z_score = s.std_err > 0.0 ? (s.mean - row.target) / s.std_err : 0.0;
    row.pass = std::abs(s.mean - row.target) <= c.tolerance * row.target;
    report.rows.push_back(row);
    report.pass = row.pass;
    return report;
}

ExperimentReport run_lm_decay(const ExperimentConfig& c) {
    validate_common(c);
    if (c.m_moment != 1 && c.m_moment != 2) {
        throw ConfigError("lm-decay supports m in {1, 2}");
    }
    std::vector<double> t_grid = c.t_grid;
    if (t_grid.empty()) t_grid = {0.25, 0.5, 1.0};
    const double t_max = *std::max_element(t_grid.begin(), t_grid.end());
    const StructureFunction sigma0 = levy_sigma0_sq(c);
    const double eps = default_eps(c);
    const double h_max = c.h_multiples.front() * eps;
    const std::size_t n_h = c.h_multiples.size();
    const std::size_t n_t = t_grid.size();

    const auto replica_fn = [&](std::size_t i, std::vector<double>& out) {
        const SamplePath full = simulate_levy(c, t_max, c.n, replica_seed(c.seed, i));
        for (std::size_t ti = 0; ti < n_t; ++ti) {
            if (t_grid[ti] == 0.0) {
                for (std::size_t k = 0; k < n_h; ++k) out[ti * n_h + k] = 0.0;
                continue;
            }
            SamplePath truncated;
            truncated.t_end = t_grid[ti];
            truncated.n = static_cast<std::size_t>(
                std::llround(static_cast<double>(c.n) * t_grid[ti] / t_max));
            truncated.family = full.family;
            truncated.values.assign(full.values.begin(),
                                    full.values.begin() + truncated.n + 1);
            const LocalTimeField field =
                estimate_local_time(truncated, eps, c.a - h_max, c.b + h_max);
            const double rhs = rhs_local_time(field, c.p, c.a, c.b);
            for (std::size_t k = 0; k < n_h; ++k) {
                const double h = c.h_multiples[k] * eps;
                const double lhs = lp_modulus_local_time(field, h, c.p, c.a, c.b, sigma0);
                out[ti * n_h + k] = std::pow(std::abs(lhs - rhs),
                                             static_cast<double>(c.m_moment));
            }
        }
    };
    const auto samples = run_replicas(c.replicas, n_t * n_h, replica_fn);

    ExperimentReport report = make_report(c);
    bool all_decreasing = true;
    std::vector<double> max_over_t(n_h, 0.0);
    for (std::size_t ti = 0; ti < n_t; ++ti) {
        double previous = 0.0;
        for (std::size_t k = 0; k < n_h; ++k) {
            const Summary s = summarize(samples, ti * n_h + k);
            ReportRow row;
            row.h = c.h_multiples[k] * eps;
            row.t = t_grid[ti];
            row.mean = s.mean;
            row.std_dev = s.std_dev;
            row.std_err = s.std_err;
            row.target = 0.0;
            row.target_name = "E|H_h(t)|^m -> 0 [centered statistic]";
            row.pass = (k == 0) || (s.mean < previous) || t_grid[ti] == 0.0;
            if (!row.pass) all_decreasing = false;
            previous = s.mean;
            max_over_t[k] = std::max(max_over_t[k], s.mean);
            report.rows.push_back(row);
        }
    }
    bool uniform_proxy = true;
    for (std::size_t k = 1; k < n_h; ++k) {
        if (!(max_over_t[k] <= max_over_t[k - 1])) uniform_proxy = false;
    }
    report.notes = "uniformity in t sampled on a finite grid: evidence, not proof";
    report.pass = all_decreasing && uniform_proxy;
    return report;
}

ExperimentReport run_covariance_bound(const ExperimentConfig& c) {
    if (!(c.b > c.a)) throw ConfigError("window must satisfy b > a");
    ExperimentReport report = make_report(c);
    const double width = c.b - c.a;
    const std::vector<double> h_values = {1e-1, 1e-2, 1e-3, 1e-4};

    const std::vector<StructureFunction> concave = {
        StructureFunction::power_law(0.5),
        StructureFunction::power_law(0.8),
        StructureFunction::custom([](double h) { return 2.0 * h; }, true, "affine(2h)"),
    };
    for (const auto& sf : concave) {
        for (double h : h_values) {
            const RhoKernel kernel(sf, h);
            ReportRow row;
            row.h = h;
            row.mean = rho_double_integral(kernel, c.a, c.b, 1e-8);
            row.target = 6.0 * width * h;
            row.target_name = sf.describe() + " <= 6(b-a)h [concave covariance bound]";
            row.pass = row.mean <= row.target;
            report.rows.push_back(row);
        }
    }

    // Convex fBm r = 1.5: the double integral scales like h^{2-r}; check the
    // log-log slope with 0.1 slack.
    const double r_convex = 1.5;
    const auto convex = StructureFunction::power_law(r_convex);
    std::vector<double> values;
    for (double h : h_values) {
        const RhoKernel kernel(convex, h);
        ReportRow row;
        row.h = h;
        row.mean = rho_double_integral(kernel, c.a, c.b, 1e-8);
        row.target = 0.0;
        row.target_name = "convex fBm r=1.5 double integral [slope input]";
        row.pass = true;
        values.push_back(row.mean);
        report.rows.push_back(row);
    }
    double slope_num = 0.0, slope_den = 0.0;
    const double lx_mean = (std::log(h_values.front()) + std::log(h_values.back())) / 2.0;
    double ly_mean = 0.0;
    for (double v : values) ly_mean += std::log(v);
    ly_mean /= static_cast<double>(values.size());
    double lxm = 0.0;
    for (double h : h_values) lxm += std::log(h);
    lxm /= static_cast<double>(h_values.size());
    (void)lx_mean;
    for (std::size_t i = 0; i < h_values.size(); ++i) {
        const double dx = std::log(h_values[i]) - lxm;
        slope_num += dx * (std::log(values[i]) - ly_mean);
        slope_den += dx * dx;
    }
    ReportRow slope_row;
    slope_row.h = 0.0;
    slope_row.mean = slope_num / slope_den;
    slope_row.target = (2.0 - r_convex) - 0.1;
    slope_row.target_name = "log-log slope >= 2-r-0.1 [convex covariance scaling]";
    slope_row.pass = slope_row.mean >= slope_row.target;
    report.rows.push_back(slope_row);

    report.pass = std::all_of(report.rows.begin(), report.rows.end(),
                              [](const ReportRow& r) { return r.pass; });
    return report;
}

ExperimentReport run_experiment(const ExperimentConfig& c) {
    const auto start = std::chrono::steady_clock::now();
    ExperimentReport report;
    if (c.kind == "gaussian-mean") report = run_gaussian_mean(c);
    else if (c.kind == "gaussian-convergence") report = run_gaussian_convergence(c);
    else if (c.kind == "squared-gaussian") report = run_squared_gaussian(c);
    else if (c.kind == "localtime-convergence") report = run_localtime_convergence(c);
    else if (c.kind == "quadratic-variation") report = run_quadratic_variation(c);
    else if (c.kind == "lm-decay") report = run_lm_decay(c);
    else if (c.kind == "covariance-bound") report = run_covariance_bound(c);
    else throw ConfigError("unknown experiment kind: " + c.kind);
    report.runtime_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

namespace {

nlohmann::json config_to_json(const ExperimentConfig& c) {
    return nlohmann::json{
        {"kind", c.kind},
        {"r", c.r},
        {"beta", c.beta},
        {"brownianHalf", c.brownian_half},
        {"p", c.p},
        {"a", c.a},
        {"b", c.b},
        {"t", c.t},
        {"tGrid", c.t_grid},
        {"mMoment", c.m_moment},
        {"n", c.n},
        {"eps", c.eps},
        {"qvM", c.qv_m},
        {"hMultiples", c.h_multiples},
        {"replicas", c.replicas},
        {"seed", c.seed},
        {"tolerance", c.tolerance},
        {"varianceDecayFactor", c.variance_decay_factor},
        {"fullSupport", c.full_support},
        {"seedDerivation", "replica i draws from splitmix64(master ^ golden*(i+1))"},
    };
}

nlohmann::json rows_to_json(const std::vector<ReportRow>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
        out.push_back({{"h", r.h},
                       {"t", r.t},
                       {"ensembleMean", r.mean},
                       {"ensembleStd", r.std_dev},
                       {"stderr", r.std_err},
                       {"target", r.target},
                       {"zScore", r.z_score},
                       {"pass", r.pass},
                       {"targetName", r.target_name}});
    }
    return out;
}

}  // namespace

nlohmann::json ExperimentReport::to_json() const {
    return nlohmann::json{{"config", config_to_json(config)},
                          {"rows", rows_to_json(rows)},
                          {"verdict", pass ? "pass" : "fail"},
                          {"runtimeSec", runtime_sec},
                          {"version", version},
                          {"notes", notes}};
}

std::string ExperimentReport::payload() const {
    return nlohmann::json{{"config", config_to_json(config)},
                          {"rows", rows_to_json(rows)},
                          {"verdict", pass ? "pass" : "fail"},
                          {"version", version}}
        .dump();
}

void ExperimentReport::write_json(const std::string& path) const {
    std::ofstream out(path);
    out << to_json().dump(2) << "\n";
}

void ExperimentReport::write_csv(const std::string& path) const {
    std::ofstream out(path);
    out << "h,t,ensembleMean,ensembleStd,stderr,target,zScore,pass\n";
    for (const auto& r : rows) {
        out << r.h << "," << r.t << "," << r.mean << "," << r.std_dev << ","
            << r.std_err << "," << r.target << "," << r.z_score << ","
            << (r.pass ? 1 : 0) << "\n";
    }
}

}  // namespace levymoduli
