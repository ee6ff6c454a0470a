#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "levymoduli/errors.hpp"
#include "levymoduli/harness.hpp"
#include "levymoduli/spectral.hpp"

using namespace levymoduli;

namespace {
ExperimentConfig small_gaussian() {
    ExperimentConfig c;
    c.kind = "gaussian-mean";
    c.r = 0.5;
    c.p = 2.0;
    c.n = 512;
    c.replicas = 50;
    c.seed = 17;
    c.h_multiples = {8.0, 2.0};
    return c;
}
}  // namespace

TEST_CASE("gaussian mean report shape and target") {
    const ExperimentReport report = run_experiment(small_gaussian());
    REQUIRE(report.rows.size() == 2);
    for (const auto& row : report.rows) {
        CHECK(row.target == doctest::Approx(abs_moment_normal(2.0) * 1.0));
        CHECK(row.std_err == doctest::Approx(row.std_dev / std::sqrt(50.0)));
        CHECK_FALSE(row.target_name.empty());
    }
    CHECK(report.version == kToolkitVersion);
}

TEST_CASE("payload is byte-identical across reruns, sensitive to the seed") {
    const ExperimentConfig c = small_gaussian();
    const std::string first = run_experiment(c).payload();
    CHECK(run_experiment(c).payload() == first);
    ExperimentConfig other = c;
    other.seed = 18;
    CHECK(run_experiment(other).payload() != first);
}

TEST_CASE("config validation") {
    ExperimentConfig c = small_gaussian();
    c.kind = "nonsense";
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
    c = small_gaussian();
    c.replicas = 0;
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
    c = small_gaussian();
    c.h_multiples = {2.0, 8.0};
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
    c = small_gaussian();
    c.h_multiples = {2.5};
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
    // degenerate sigma^2(h) = h^2 has constant spectral content and is rejected
    c = small_gaussian();
    c.r = 2.0;
    CHECK_THROWS_AS(run_experiment(c), std::invalid_argument);
    c = small_gaussian();
    c.r = 0.0;  // no family at all
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
}

TEST_CASE("lm-decay emits exact zero rows at t = 0") {
    ExperimentConfig c;
    c.kind = "lm-decay";
    c.brownian_half = true;
    c.p = 2.0;
    c.m_moment = 1;
    c.n = 4096;
    c.replicas = 10;
    c.seed = 23;
    c.a = -2.0;
    c.b = 2.0;
    c.t_grid = {0.0, 1.0};
    c.h_multiples = {16.0, 4.0};
    const ExperimentReport report = run_experiment(c);
    int zero_rows = 0;
    for (const auto& row : report.rows) {
        if (row.t == 0.0) {
            CHECK(row.mean == 0.0);
            CHECK(row.std_dev == 0.0);
            ++zero_rows;
        }
    }
    CHECK(zero_rows == 2);
    CHECK_THROWS_AS([&] {
        ExperimentConfig bad = c;
        bad.m_moment = 3;
        run_experiment(bad);
    }(), ConfigError);
}

TEST_CASE("quadratic variation requires a quadratic exponent") {
    ExperimentConfig c;
    c.kind = "quadratic-variation";
    c.beta = 1.5;
    c.n = 4096;
    c.replicas = 5;
    CHECK_THROWS_AS(run_experiment(c), ConfigError);
}

TEST_CASE("report files: JSON schema keys and CSV rows") {
    const ExperimentReport report = run_experiment(small_gaussian());
    const std::string json_path = "report_test.json";
    const std::string csv_path = "report_test.csv";
    report.write_json(json_path);
    report.write_csv(csv_path);

    std::ifstream jin(json_path);
    std::stringstream jbuf;
    jbuf << jin.rdbuf();
    const std::string json = jbuf.str();
    for (const char* key : {"\"config\"", "\"rows\"", "\"verdict\"", "\"version\""}) {
        CHECK(json.find(key) != std::string::npos);
    }

    std::ifstream cin_(csv_path);
    std::string header;
    std::getline(cin_, header);
    CHECK(header == "h,t,ensembleMean,ensembleStd,stderr,target,zScore,pass");
    std::size_t rows = 0;
    for (std::string line; std::getline(cin_, line);) {
        if (!line.empty()) ++rows;
    }
    CHECK(rows == report.rows.size());
    std::remove(json_path.c_str());
    std::remove(csv_path.c_str());
}

TEST_CASE("worker cap honors LEVY_MODULI_THREADS") {
    setenv("LEVY_MODULI_THREADS", "1", 1);
    CHECK(worker_count() == 1);
    unsetenv("LEVY_MODULI_THREADS");
    CHECK(worker_count() >= 1);
}

TEST_CASE("parallel and serial execution produce identical payloads") {
    const ExperimentConfig c = small_gaussian();
    setenv("LEVY_MODULI_THREADS", "1", 1);
    const std::string serial = run_experiment(c).payload();
    unsetenv("LEVY_MODULI_THREADS");
    CHECK(run_experiment(c).payload() == serial);
}
