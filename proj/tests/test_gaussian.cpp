#include <doctest.h>

#include <cmath>

#include "levymoduli/errors.hpp"
#include "levymoduli/gaussian.hpp"
#include "levymoduli/rng.hpp"
#include "levymoduli/structure_function.hpp"

using namespace levymoduli;

namespace {
const StructureFunction kAffine =
    StructureFunction::custom([](double h) { return h; }, true, "affine(h)");
}

TEST_CASE("increment autocovariance") {
    CHECK(increment_autocovariance(kAffine, 0.1, 1) == doctest::Approx(0.0));
    CHECK(increment_autocovariance(kAffine, 0.1, 0) == doctest::Approx(0.1));
    // power law at unit spacing: (2^r - 2)/2
    CHECK(increment_autocovariance(StructureFunction::power_law(0.5), 1.0, 1) ==
          doctest::Approx((std::pow(2.0, 0.5) - 2.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("rho kernel is 1 at zero and bounded by 1") {
    const RhoKernel affine(kAffine, 0.01);
    CHECK(affine(0.0) == doctest::Approx(1.0));
    CHECK(affine(0.5) == doctest::Approx(0.0));
    const RhoKernel fbm(StructureFunction::power_law(0.5), 0.01);
    CHECK(fbm(0.01) == doctest::Approx((std::pow(2.0, 0.5) - 2.0) / 2.0));
    for (double s = 0.0; s <= 1.0; s += 0.013) {
        CHECK(std::abs(fbm(s)) <= 1.0 + 1e-12);
    }
    CHECK_THROWS_AS(RhoKernel(kAffine, 0.0), DomainError);
}

TEST_CASE("rho double integral closed-form spot value") {
    // affine sigma^2: 2 int_0^h (1 - s/h)(1 - s) ds = h - h^2/3
    const double h = 0.01;
    const RhoKernel kernel(kAffine, h);
    CHECK(rho_double_integral(kernel, 0.0, 1.0) ==
          doctest::Approx(h - h * h / 3.0).epsilon(1e-6));
}

TEST_CASE("simulated path construction and determinism") {
    const auto sf = StructureFunction::power_law(0.5);
    const GaussianPath path = simulate_stationary_increment_path(sf, 0.0, 1.0, 1.0 / 8.0,
                                                                 0.0, 42);
    CHECK(path.values.size() == 9);
    CHECK(path.values[0] == 0.0);
    const GaussianPath again = simulate_stationary_increment_path(sf, 0.0, 1.0, 1.0 / 8.0,
                                                                  0.0, 42);
    CHECK(path.values == again.values);
    const GaussianPath other = simulate_stationary_increment_path(sf, 0.0, 1.0, 1.0 / 8.0,
                                                                  0.0, 43);
    CHECK(path.values != other.values);
}

TEST_CASE("simulated increment variance matches sigma^2(dx)") {
    const auto sf = StructureFunction::power_law(1.0);
    const double dx = std::pow(2.0, -10.0);
    double sum_sq = 0.0;
    std::size_t count = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const GaussianPath path =
            simulate_stationary_increment_path(sf, 0.0, 1.0, dx, 0.0, 1000 + seed);
        for (std::size_t i = 1; i < path.values.size(); ++i) {
            const double d = path.values[i] - path.values[i - 1];
            sum_sq += d * d;
            ++count;
        }
    }
    const double est = sum_sq / static_cast<double>(count);
    // chi^2 mean dx, stderr dx sqrt(2/N)
    const double se = dx * std::sqrt(2.0 / static_cast<double>(count));
    CHECK(std::abs(est - dx) <= 3.0 * se);
}

TEST_CASE("lp modulus on deterministic paths") {
    const auto sf = StructureFunction::power_law(0.5);
    GaussianPath zero;
    zero.a = 0.0;
    zero.b = 1.0;
    zero.dx = 0.25;
    zero.h_max = 0.25;
    zero.values.assign(6, 0.0);
    CHECK(lp_modulus_gaussian(zero, 0.25, 2.0, 0.0, 1.0, sf) == 0.0);
    CHECK(lp_modulus_squared_gaussian(zero, 0.25, 2.0, 0.0, 1.0, sf) == 0.0);

    // path equal to the grid coordinate with sigma(h) = h gives exactly b - a
    GaussianPath line = zero;
    for (std::size_t i = 0; i < line.values.size(); ++i) {
        line.values[i] = static_cast<double>(i) * line.dx;
    }
    const auto sigma_h =
        StructureFunction::custom([](double h) { return h * h; }, false, "sigma=h");
    CHECK(lp_modulus_gaussian(line, 0.25, 2.0, 0.0, 1.0, sigma_h) == doctest::Approx(1.0));
}

TEST_CASE("pinning invariance: constants do not change the modulus") {
    const auto sf = StructureFunction::power_law(0.5);
    GaussianPath path = simulate_stationary_increment_path(sf, 0.0, 1.0, 1.0 / 64.0,
                                                           1.0 / 16.0, 7);
    const double base = lp_modulus_gaussian(path, 1.0 / 16.0, 2.0, 0.0, 1.0, sf);
    for (double& v : path.values) v += 3.25;
    CHECK(lp_modulus_gaussian(path, 1.0 / 16.0, 2.0, 0.0, 1.0, sf) ==
          doctest::Approx(base));
}

TEST_CASE("squared modulus on a 3-point path by direct arithmetic") {
    GaussianPath path;
    path.a = 0.0;
    path.b = 1.0;
    path.dx = 0.5;
    path.h_max = 0.0;
    path.values = {0.2, -0.4, 0.9};
    const auto sf = StructureFunction::custom([](double) { return 1.0; }, true, "unit");
    // dx * (|G^2(0.5)-G^2(0)|^p + |G^2(1)-G^2(0.5)|^p), p = 1
    const double expected =
        0.5 * (std::abs(0.16 - 0.04) + std::abs(0.81 - 0.16));
    CHECK(lp_modulus_squared_gaussian(path, 0.5, 1.0, 0.0, 1.0, sf) ==
          doctest::Approx(expected));
}

TEST_CASE("misaligned h is rejected") {
    const auto sf = StructureFunction::power_law(0.5);
    const GaussianPath path = simulate_stationary_increment_path(sf, 0.0, 1.0, 0.125,
                                                                 0.125, 3);
    CHECK_THROWS_AS(lp_modulus_gaussian(path, 0.1, 2.0, 0.0, 1.0, sf), AlignmentError);
}
