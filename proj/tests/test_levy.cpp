#include <doctest.h>

#include <cmath>

#include "levymoduli/errors.hpp"
#include "levymoduli/levy.hpp"
#include "levymoduli/structure_function.hpp"

using namespace levymoduli;

namespace {
const StructureFunction kUnit =
    StructureFunction::custom([](double) { return 1.0; }, true, "unit");
}

TEST_CASE("path construction and determinism") {
    const SamplePath path = simulate_stable_path(1.5, 1.0, 64, 5);
    CHECK(path.values.size() == 65);
    CHECK(path.values[0] == 0.0);
    CHECK(path.values == simulate_stable_path(1.5, 1.0, 64, 5).values);
    CHECK(path.values != simulate_stable_path(1.5, 1.0, 64, 6).values);
    CHECK_THROWS_AS(simulate_stable_path(1.0, 1.0, 64, 5), DomainError);
    CHECK_THROWS_AS(simulate_stable_path(0.8, 1.0, 64, 5), DomainError);
}

TEST_CASE("canonical 2-stable increments have variance 2/n") {
    const std::size_t n = 1 << 16;
    const SamplePath path = simulate_stable_path(2.0, 1.0, n, 9);
    double sum_sq = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
        const double d = path.values[i] - path.values[i - 1];
        sum_sq += d * d;
    }
    const double target = 2.0 / static_cast<double>(n);
    const double est = sum_sq / static_cast<double>(n);
    const double se = target * std::sqrt(2.0 / static_cast<double>(n));
    CHECK(std::abs(est - target) <= 3.0 * se);
}

TEST_CASE("stable sampler matches the characteristic function at lambda = 1") {
    // E cos(X_1) = e^{-psi(1)} = e^{-1} for the canonical 1.5-stable process
    const std::size_t replicas = 100000;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t i = 0; i < replicas; ++i) {
        const SamplePath path = simulate_stable_path(1.5, 1.0, 4, 20000 + i);
        const double c = std::cos(path.values.back());
        sum += c;
        sum_sq += c * c;
    }
    const double mean = sum / static_cast<double>(replicas);
    const double var = sum_sq / static_cast<double>(replicas) - mean * mean;
    const double se = std::sqrt(var / static_cast<double>(replicas));
    CHECK(std::abs(mean - std::exp(-1.0)) <= 3.0 * se);
}

TEST_CASE("occupation identity is exact and the field is nonnegative") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const SamplePath path = simulate_stable_path(1.7, 0.7, 4096, seed);
        const LocalTimeField field = estimate_local_time(path, 0.05, -1.0, 1.0);
        double mass = 0.0;
        for (double v : field.values) {
            CHECK(v >= 0.0);
            mass += v;
        }
        CHECK(std::abs(field.eps * mass - path.t_end) <= 1e-9 * path.t_end);
    }
}

TEST_CASE("resolution warning fires below the displacement scale") {
    const SamplePath path = simulate_brownian_half_path(1.0, 1024, 4);
    const double step = std::sqrt(1.0 / 1024.0);
    CHECK(estimate_local_time(path, 0.5 * step, -1.0, 1.0).resolution_warning);
    CHECK_FALSE(estimate_local_time(path, 8.0 * step, -1.0, 1.0).resolution_warning);
}

TEST_CASE("lp modulus of a hand-built field") {
    LocalTimeField field;
    field.eps = 1.0;
    field.origin = -1.0;
    field.t = 1.0;
    field.values = {0.0, 1.0, 0.0};
    // differences over h=1 on [-1, 1): (1-0)^2 + (0-1)^2 = 2
    CHECK(lp_modulus_local_time(field, 1.0, 2.0, -1.0, 1.0, kUnit) ==
          doctest::Approx(2.0));
    LocalTimeField constant = field;
    constant.values = {0.5, 0.5, 0.5};
    CHECK(lp_modulus_local_time(constant, 1.0, 2.0, -1.0, 1.0, kUnit) == 0.0);
    CHECK_THROWS_AS(lp_modulus_local_time(field, 0.5, 2.0, -1.0, 1.0, kUnit),
                    AlignmentError);
}

TEST_CASE("rhs of the limit identity on a constant field") {
    LocalTimeField field;
    field.eps = 0.25;
    field.origin = 0.0;
    field.t = 1.0;
    field.values.assign(5, 1.0);
    // 2^{p/2} E|eta|^p eps sum l^{p/2} = 2 * 1 * 1 = 2 at p = 2 on [0, 1)
    CHECK(rhs_local_time(field, 2.0, 0.0, 1.0) == doctest::Approx(2.0));
    field.values.assign(5, 0.0);
    CHECK(rhs_local_time(field, 2.0, 0.0, 1.0) == 0.0);
}

TEST_CASE("quadratic variation sum on a hand-built field") {
    LocalTimeField field;
    field.eps = 1.0;
    field.origin = -1.0;
    field.t = 1.0;
    field.values = {0.0, 1.0, 0.0};
    CHECK(quadratic_variation_sum(field, 1) == doctest::Approx(2.0));
    field.values = {0.0, 0.0, 0.0};
    CHECK(quadratic_variation_sum(field, 1) == 0.0);
    CHECK_THROWS_AS(quadratic_variation_sum(field, 3), AlignmentError);
}
