// Command-line front end: spectral evaluation, simulation, oracles, condition
// checks, and verification experiments.
//
// Exit codes: 0 success/pass, 1 experiment verdict fail, 2 usage error,
// 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "levymoduli/errors.hpp"
#include "levymoduli/gaussian.hpp"
#include "levymoduli/harness.hpp"
#include "levymoduli/levy.hpp"
#include "levymoduli/oracles.hpp"
#include "levymoduli/spectral.hpp"
#include "levymoduli/structure_function.hpp"

namespace {

using namespace levymoduli;

struct FamilyOpts {
    std::string family = "stable";  // stable | brownian | scaled | tabulated
    double beta = 1.5;
    double coef = 1.0;
    std::string table;
};

void add_family_flags(CLI::App* cmd, FamilyOpts& opts) {
    cmd->add_option("--family", opts.family, "exponent family")
        ->check(CLI::IsMember({"stable", "brownian", "scaled", "tabulated"}))
        ->capture_default_str();
    cmd->add_option("--beta", opts.beta, "stable index in (1, 2]")->capture_default_str();
    cmd->add_option("--coef", opts.coef, "scale c in psi = c |lambda|^beta")
        ->capture_default_str();
    cmd->add_option("--table", opts.table, "tabulated exponent CSV (lambda,psi)");
}

CharacteristicExponent make_exponent(const FamilyOpts& opts) {
    if (opts.family == "brownian") return CharacteristicExponent::brownian_half();
    if (opts.family == "scaled") {
        return CharacteristicExponent::scaled_stable(opts.coef, opts.beta);
    }
    if (opts.family == "tabulated") {
        if (opts.table.empty()) throw ConfigError("--table required for tabulated family");
        return CharacteristicExponent::from_csv(opts.table);
    }
    return CharacteristicExponent::canonical_stable(opts.beta);
}

void print_value(double v, int precision) { std::printf("%.*g\n", precision, v); }

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token = CLI::detail::trim_copy(token);
        if (!token.empty()) out.push_back(std::stod(token));
    }
    return out;
}

bool parse_bool(const std::string& text) {
    return text == "1" || text == "true" || text == "yes" || text == "on";
}

// Flat key=value file for the verify subcommand. Keys mirror the long flag
// names; values already given on the command line win.
void apply_config_file(const std::string& path, const CLI::App* verify,
                       ExperimentConfig& cfg, bool& brownian_flag) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    const auto unset = [&](const char* flag) { return verify->count(flag) == 0; };
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = CLI::detail::trim_copy(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line is not key=value: " + line);
        }
        const std::string key = CLI::detail::trim_copy(line.substr(0, eq));
        const std::string value = CLI::detail::trim_copy(line.substr(eq + 1));
        if (key == "r") {
            if (unset("--r")) cfg.r = std::stod(value);
        } else if (key == "beta") {
            if (unset("--beta")) cfg.beta = std::stod(value);
        } else if (key == "brownian") {
            if (unset("--brownian")) brownian_flag = parse_bool(value);
        } else if (key == "p") {
            if (unset("--p")) cfg.p = std::stod(value);
        } else if (key == "a") {
            if (unset("--a")) cfg.a = std::stod(value);
        } else if (key == "b") {
            if (unset("--b")) cfg.b = std::stod(value);
        } else if (key == "t") {
            if (unset("--t")) cfg.t = std::stod(value);
        } else if (key == "t-grid") {
            if (unset("--t-grid")) cfg.t_grid = parse_double_list(value);
        } else if (key == "m-moment") {
            if (unset("--m-moment")) cfg.m_moment = std::stoi(value);
        } else if (key == "n") {
            if (unset("--n")) cfg.n = static_cast<std::size_t>(std::stoull(value));
        } else if (key == "eps") {
            if (unset("--eps")) cfg.eps = std::stod(value);
        } else if (key == "qv-m") {
            if (unset("--qv-m")) cfg.qv_m = static_cast<std::size_t>(std::stoull(value));
        } else if (key == "h-multiples") {
            if (unset("--h-multiples")) cfg.h_multiples = parse_double_list(value);
        } else if (key == "replicas") {
            if (unset("--replicas")) {
                cfg.replicas = static_cast<std::size_t>(std::stoull(value));
            }
        } else if (key == "seed") {
            if (unset("--seed")) cfg.seed = std::stoull(value);
        } else if (key == "tolerance") {
            if (unset("--tolerance")) cfg.tolerance = std::stod(value);
        } else if (key == "variance-decay-factor") {
            if (unset("--variance-decay-factor")) {
                cfg.variance_decay_factor = std::stod(value);
            }
        } else if (key == "full-support") {
            if (unset("--full-support")) cfg.full_support = parse_bool(value);
        } else {
            throw ConfigError("unknown config key: " + key);
        }
    }
}

int cmd_sigma(const FamilyOpts& fam, double h, double alpha, const std::string& which,
              double tol, int precision) {
    const CharacteristicExponent exp = make_exponent(fam);
    double v = 0.0;
    if (which == "sigma0") v = sigma0_sq(exp, h, tol);
    else if (which == "sigma-alpha") v = sigma_alpha_sq(exp, alpha, h, tol);
    else if (which == "sigma-tilde") v = sigma_tilde_sq(exp, alpha, h, tol);
    else if (which == "closed") v = sigma0_sq_stable_closed(exp.stable_index(), h);
    print_value(v, precision);
    return 0;
}

int cmd_constants(double p, std::optional<double> beta, const std::string& theorem,
                  int precision) {
    if (theorem == "brownian") {
        print_value(brownian_theorem_constant(p), precision);
    } else if (beta) {
        print_value(c_beta_p(*beta, p), precision);
    } else {
        print_value(abs_moment_normal(p), precision);
    }
    return 0;
}

StructureFunction make_structure(const FamilyOpts& fam, double r, bool closed, double tol) {
    if (r > 0.0) return StructureFunction::power_law(r);
    if (closed) return StructureFunction::closed_form_stable(fam.beta);
    return StructureFunction::spectral(make_exponent(fam), 0.0, tol);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"L^p modulus toolkit for Gaussian structure functions and "
                 "Levy local times"};
    app.require_subcommand(1);
    int precision = 6;
    app.add_option("--precision", precision, "significant digits for numeric output")
        ->capture_default_str();

    // sigma
    auto* sigma = app.add_subcommand("sigma", "evaluate spectral increment variances");
    sigma->set_help_flag("--help", "print help");  // frees -h for the lag flag
    FamilyOpts sigma_fam;
    add_family_flags(sigma, sigma_fam);
    double sigma_h = 1.0, sigma_alpha = 0.0, sigma_tol = kDefaultQuadTol;
    std::string sigma_which = "sigma0";
    sigma->add_option("--h", sigma_h, "increment lag")->required();
    sigma->add_option("--alpha", sigma_alpha, "resolvent parameter");
    sigma->add_option("--which", sigma_which, "quantity to print")
        ->check(CLI::IsMember({"sigma0", "sigma-alpha", "sigma-tilde", "closed"}))
        ->capture_default_str();
    sigma->add_option("--tol", sigma_tol, "quadrature relative tolerance")
        ->capture_default_str();

    // constants
    auto* constants = app.add_subcommand("constants", "print limit constants");
    double const_p = 2.0;
    std::optional<double> const_beta;
    std::string const_theorem;
    constants->add_option("--p", const_p, "moment order")->capture_default_str();
    constants->add_option("--beta", const_beta, "stable index for c(beta, p)");
    constants->add_option("--theorem", const_theorem,
                          "named constant (brownian: 2^{3p/2} Gamma((p+1)/2)/sqrt(pi))")
        ->check(CLI::IsMember({"brownian"}));

    // simulate
    auto* simulate = app.add_subcommand("simulate", "emit path or field CSV");
    FamilyOpts sim_fam;
    add_family_flags(simulate, sim_fam);
    std::string sim_process = "levy";
    double sim_t = 1.0, sim_eps = 0.0, sim_a = -2.0, sim_b = 2.0;
    double sim_r = 0.0, sim_dx = 1.0 / 256.0, sim_hmax = 0.0;
    std::size_t sim_n = 1 << 14;
    std::uint64_t sim_seed = 1;
    std::string sim_out = "path.csv", sim_localtime_out;
    simulate->add_option("--process", sim_process, "levy | gaussian")
        ->check(CLI::IsMember({"levy", "gaussian"}))
        ->capture_default_str();
    simulate->add_option("--t", sim_t, "time horizon")->capture_default_str();
    simulate->add_option("--n", sim_n, "grid steps")->capture_default_str();
    simulate->add_option("--seed", sim_seed, "master seed")->capture_default_str();
    simulate->add_option("--out", sim_out, "output CSV path")->capture_default_str();
    simulate->add_option("--local-time-out", sim_localtime_out,
                         "also emit the local-time field CSV here");
    simulate->add_option("--eps", sim_eps, "local-time bin width (0 = resolution rule)");
    simulate->add_option("--a", sim_a, "window left end")->capture_default_str();
    simulate->add_option("--b", sim_b, "window right end")->capture_default_str();
    simulate->add_option("--r", sim_r, "fBm exponent (gaussian process, sigma^2 = h^r)");
    simulate->add_option("--dx", sim_dx, "gaussian grid spacing")->capture_default_str();
    simulate->add_option("--h-max", sim_hmax, "gaussian grid slack beyond b");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "print local-time moment values");
    FamilyOpts orc_fam;
    add_family_flags(oracle, orc_fam);
    int orc_m = 1;
    double orc_t = 1.0, orc_x = 0.0, orc_z = 0.0, orc_tol = 1e-9;
    std::optional<double> orc_y;
    bool orc_force = false;
    oracle->add_option("--m", orc_m, "moment order (1..3)")->capture_default_str();
    oracle->add_option("--t", orc_t, "time")->capture_default_str();
    oracle->add_option("--x", orc_x, "spatial level")->capture_default_str();
    oracle->add_option("--z", orc_z, "starting point")->capture_default_str();
    oracle->add_option("--diff-y", orc_y,
                       "second level: print E(L^x - L^y)^2 instead of a moment");
    oracle->add_option("--tol", orc_tol, "quadrature tolerance")->capture_default_str();
    oracle->add_flag("--force-quadrature", orc_force,
                     "bypass closed forms, integrate numerically");

    // check
    auto* check = app.add_subcommand("check", "regularity condition trend checks");
    FamilyOpts chk_fam;
    add_family_flags(check, chk_fam);
    std::string chk_condition = "cq";
    double chk_q = 1.0, chk_gamma = 1.5, chk_delta = 1e-3, chk_r = 0.0;
    bool chk_closed = false;
    check->add_option("--condition", chk_condition, "cq | lambda-gamma | concavity")
        ->check(CLI::IsMember({"cq", "lambda-gamma", "concavity"}))
        ->capture_default_str();
    check->add_option("--q", chk_q, "C_q parameter")->capture_default_str();
    check->add_option("--gamma", chk_gamma, "Lambda_gamma parameter")->capture_default_str();
    check->add_option("--delta", chk_delta, "concavity probe scale")->capture_default_str();
    check->add_option("--r", chk_r, "use sigma^2 = h^r instead of the spectral form");
    check->add_flag("--closed", chk_closed, "use the closed stable structure function");

    // verify
    auto* verify = app.add_subcommand("verify", "run a verification experiment");
    std::string config_path;
    verify->add_option("--config", config_path, "flat key=value config file; flags override");
    ExperimentConfig cfg;
    std::string verify_kind;
    std::string json_out, csv_out;
    bool brownian_flag = false;
    verify->add_option("kind", verify_kind, "experiment kind")
        ->required()
        ->check(CLI::IsMember({"gaussian-mean", "gaussian-convergence", "squared-gaussian",
                               "localtime-convergence", "quadratic-variation", "lm-decay",
                               "covariance-bound"}));
    verify->add_option("--r", cfg.r, "fBm exponent");
    verify->add_option("--beta", cfg.beta, "stable index");
    verify->add_flag("--brownian", brownian_flag, "use the Brownian-motion exponent");
    verify->add_option("--p", cfg.p, "moment order")->capture_default_str();
    verify->add_option("--a", cfg.a, "window left end")->capture_default_str();
    verify->add_option("--b", cfg.b, "window right end")->capture_default_str();
    verify->add_option("--t", cfg.t, "time horizon")->capture_default_str();
    verify->add_option("--t-grid", cfg.t_grid, "probe times (lm-decay)");
    verify->add_option("--m-moment", cfg.m_moment, "L^m exponent (lm-decay)")
        ->capture_default_str();
    verify->add_option("--n", cfg.n, "grid steps")->capture_default_str();
    verify->add_option("--eps", cfg.eps, "local-time bin width (0 = resolution rule)");
    verify->add_option("--qv-m", cfg.qv_m, "quadratic-variation spacing 1/m")
        ->capture_default_str();
    verify->add_option("--h-multiples", cfg.h_multiples,
                       "h schedule as multiples of the base spacing");
    verify->add_option("--replicas", cfg.replicas, "ensemble size")->capture_default_str();
    verify->add_option("--seed", cfg.seed, "master seed")->capture_default_str();
    verify->add_option("--tolerance", cfg.tolerance, "relative band for ratio verdicts")
        ->capture_default_str();
    verify->add_option("--variance-decay-factor", cfg.variance_decay_factor,
                       "required endpoint std ratio")
        ->capture_default_str();
    verify->add_flag("--full-support", cfg.full_support,
                     "integrate over each replica's realized range");
    verify->add_option("--json", json_out, "write the JSON report here");
    verify->add_option("--csv", csv_out, "write the CSV report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sigma->parsed()) {
            return cmd_sigma(sigma_fam, sigma_h, sigma_alpha, sigma_which, sigma_tol,
                             precision);
        }
        if (constants->parsed()) {
            return cmd_constants(const_p, const_beta, const_theorem, precision);
        }
        if (simulate->parsed()) {
            if (sim_process == "gaussian") {
                const StructureFunction sf =
                    make_structure(sim_fam, sim_r, /*closed=*/sim_r <= 0.0, kDefaultQuadTol);
                const GaussianPath path = simulate_stationary_increment_path(
                    sf, sim_a, sim_b, sim_dx, sim_hmax, sim_seed);
                path.to_csv(sim_out);
            } else {
                const SamplePath path =
                    sim_fam.family == "brownian"
                        ? simulate_brownian_half_path(sim_t, sim_n, sim_seed)
                        : simulate_stable_path(sim_fam.beta, sim_t, sim_n, sim_seed);
                path.to_csv(sim_out);
                if (!sim_localtime_out.empty()) {
                    double eps = sim_eps;
                    if (eps <= 0.0) {
                        const auto& tail = path.family.tail();
                        eps = 4.0 * std::pow(tail.coef * sim_t / static_cast<double>(sim_n),
                                             1.0 / tail.exponent);
                    }
                    estimate_local_time(path, eps, sim_a, sim_b).to_csv(sim_localtime_out);
                }
            }
            return 0;
        }
        if (oracle->parsed()) {
            const CharacteristicExponent exp = make_exponent(orc_fam);
            if (orc_y) {
                print_value(local_time_diff_second_moment(exp, orc_t, orc_x, *orc_y, orc_tol),
                            precision);
            } else {
                MomentQuery q;
                q.exp = exp;
                q.m = orc_m;
                q.t = orc_t;
                q.x = orc_x;
                q.z = orc_z;
                q.tol = orc_tol;
                q.force_quadrature = orc_force;
                print_value(local_time_moment(q), precision);
            }
            return 0;
        }
        if (check->parsed()) {
            if (chk_condition == "lambda-gamma") {
                std::puts(check_condition_lambda_gamma(make_exponent(chk_fam), chk_gamma)
                              .to_string()
                              .c_str());
            } else {
                const StructureFunction sf =
                    make_structure(chk_fam, chk_r, chk_closed, kDefaultQuadTol);
                if (chk_condition == "cq") {
                    std::puts(check_condition_cq(sf, chk_q).to_string().c_str());
                } else {
                    const ConcavityReport rep = check_concavity(sf, chk_delta);
                    std::printf("concave=%s monotone=%s worst_second_difference=%.*g\n",
                                rep.concave ? "yes" : "no", rep.monotone ? "yes" : "no",
                                precision, rep.worst_second_difference);
                }
            }
            return 0;
        }
        if (verify->parsed()) {
            if (!config_path.empty()) {
                apply_config_file(config_path, verify, cfg, brownian_flag);
            }
            cfg.kind = verify_kind;
            cfg.brownian_half = brownian_flag;
            const ExperimentReport report = run_experiment(cfg);
            if (!json_out.empty()) report.write_json(json_out);
            if (!csv_out.empty()) report.write_csv(csv_out);
            for (const auto& row : report.rows) {
                std::printf("h=%-12.*g t=%-8.*g mean=%-12.*g stderr=%-12.*g "
                            "target=%-12.*g %s\n",
                            precision, row.h, precision, row.t, precision, row.mean,
                            precision, row.std_err, precision, row.target,
                            row.pass ? "pass" : "FAIL");
            }
            if (!report.notes.empty()) std::printf("note: %s\n", report.notes.c_str());
            std::printf("verdict: %s\n", report.pass ? "pass" : "fail");
            return report.pass ? 0 : 1;
        }
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const DomainError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const AlignmentError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 2;
}
