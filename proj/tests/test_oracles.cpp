#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "levymoduli/errors.hpp"
#include "levymoduli/oracles.hpp"
#include "levymoduli/spectral.hpp"

using namespace levymoduli;

namespace {
// ctest runs from the build directory; the fixtures live in the source tree.
const char* fixtures_path() {
#ifdef LEVYMODULI_SOURCE_DIR
    return LEVYMODULI_SOURCE_DIR "/data/fixtures.json";
#else
    return "../data/fixtures.json";
#endif
}
}  // namespace

TEST_CASE("first moment reduces to V(t) on all families") {
    const std::vector<CharacteristicExponent> families = {
        CharacteristicExponent::brownian_half(),
        CharacteristicExponent::canonical_stable(1.5),
        CharacteristicExponent::canonical_stable(2.0),
        CharacteristicExponent::scaled_stable(0.7, 1.8),
    };
    for (const auto& exp : families) {
        MomentQuery q;
        q.exp = exp;
        q.m = 1;
        q.t = 1.0;
        const double v = v_of_t(exp, 1.0);
        CHECK(local_time_moment(q) == doctest::Approx(v).epsilon(1e-8));
    }
}

TEST_CASE("closed moment values") {
    MomentQuery q;
    q.exp = CharacteristicExponent::canonical_stable(2.0);
    q.m = 2;
    q.t = 1.0;
    CHECK(local_time_moment(q) == doctest::Approx(0.5).epsilon(1e-10));

    q.exp = CharacteristicExponent::brownian_half();
    q.m = 1;
    CHECK(local_time_moment(q) == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-10));
}

TEST_CASE("Dirichlet closed form agrees with nested quadrature") {
    for (double beta : {1.5, 2.0}) {
        for (int m : {2, 3}) {
            MomentQuery q;
            q.exp = CharacteristicExponent::canonical_stable(beta);
            q.m = m;
            q.t = 1.0;
            q.tol = 1e-9;
            const double closed = local_time_moment(q);
            q.force_quadrature = true;
            CHECK(local_time_moment(q) == doctest::Approx(closed).epsilon(1e-6));
        }
    }
}

TEST_CASE("moment domain errors") {
    MomentQuery q;
    // m = 4 is fine through the closed Dirichlet route but has no
    // quadrature fallback
    q.m = 4;
    q.force_quadrature = true;
    CHECK_THROWS_AS(local_time_moment(q), DomainError);
    q.force_quadrature = false;
    q.m = 0;
    CHECK_THROWS_AS(local_time_moment(q), DomainError);
    q.m = 1;
    q.t = 0.0;
    CHECK_THROWS_AS(local_time_moment(q), DomainError);
}

TEST_CASE("difference second moment: zero at x=y, symmetric, monotone in |x-y|") {
    const auto bm = CharacteristicExponent::brownian_half();
    CHECK(local_time_diff_second_moment(bm, 1.0, 0.3, 0.3) == 0.0);
    const double fwd = local_time_diff_second_moment(bm, 1.0, 0.0, 0.2, 1e-7);
    const double rev = local_time_diff_second_moment(bm, 1.0, 0.2, 0.0, 1e-7);
    CHECK(fwd == doctest::Approx(rev).epsilon(1e-6));

    double previous = 0.0;
    for (double d : {0.05, 0.1, 0.2, 0.5}) {
        const double m2 = local_time_diff_second_moment(bm, 1.0, 0.0, d, 1e-7);
        CHECK(m2 > previous);
        previous = m2;
    }
}

TEST_CASE("difference second moment scales with V(t) sigma0^2(x-y)") {
    const auto bm = CharacteristicExponent::brownian_half();
    const double v1 = v_of_t(bm, 1.0);
    std::vector<double> ratios;
    for (double d : {0.01, 0.05, 0.1, 0.2, 0.5}) {
        const double m2 = local_time_diff_second_moment(bm, 1.0, 0.0, d, 1e-7);
        ratios.push_back(m2 / (v1 * sigma0_sq(bm, d)));
    }
    // one fitted constant covers the whole range within a factor of 2
    const double hi = *std::max_element(ratios.begin(), ratios.end());
    const double lo = *std::min_element(ratios.begin(), ratios.end());
    CHECK(hi / lo < 2.0);
}

TEST_CASE("brownian limit constant") {
    CHECK(brownian_theorem_constant(2.0) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(brownian_theorem_constant(1.0) ==
          doctest::Approx(std::pow(2.0, 1.5) / std::sqrt(M_PI)).epsilon(1e-12));
}

TEST_CASE("fixtures pin the recorded golden values") {
    const Fixture diff2 = load_fixture(
        fixtures_path(), "diff_second_moment/brownian-half/t=1/x=0/y=0.1");
    const auto bm = CharacteristicExponent::brownian_half();
    CHECK(local_time_diff_second_moment(bm, 1.0, 0.0, 0.1, 1e-10) ==
          doctest::Approx(diff2.value).epsilon(10 * diff2.tol));

    const Fixture tilde = load_fixture(
        fixtures_path(), "sigma_tilde_sq/canonical-stable(beta=1.5)/alpha=1/h=0.01");
    const auto s15 = CharacteristicExponent::canonical_stable(1.5);
    CHECK(sigma_tilde_sq(s15, 1.0, 0.01, 1e-10) ==
          doctest::Approx(tilde.value).epsilon(10 * tilde.tol));
    // Lemma-scale smallness relative to sigma0^2 at the same h
    CHECK(tilde.value <= 0.01 * sigma0_sq(s15, 0.01));

    CHECK_THROWS_AS(load_fixture(fixtures_path(), "missing-key"), DomainError);
}
