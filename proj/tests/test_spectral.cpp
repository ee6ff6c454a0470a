#include <doctest.h>

#include <cmath>

#include "levymoduli/characteristic_exponent.hpp"
#include "levymoduli/errors.hpp"
#include "levymoduli/oracles.hpp"
#include "levymoduli/spectral.hpp"
#include "levymoduli/structure_function.hpp"

using namespace levymoduli;

TEST_CASE("sigma0_sq known values") {
    const auto bm = CharacteristicExponent::brownian_half();
    CHECK(sigma0_sq(bm, 0.25) == doctest::Approx(0.5).epsilon(1e-8));
    const auto stable = CharacteristicExponent::canonical_stable(1.5);
    CHECK(sigma0_sq(stable, 1.0) == doctest::Approx(1.59577).epsilon(1e-5));
    CHECK(sigma0_sq(stable, 0.0) == 0.0);
}

TEST_CASE("sigma0_sq matches the stable closed form") {
    for (double beta : {1.2, 1.5, 1.8, 2.0}) {
        const auto exp = CharacteristicExponent::canonical_stable(beta);
        for (double h : {1e-2, 1e-1, 1.0}) {
            const double closed = sigma0_sq_stable_closed(beta, h);
            CHECK(sigma0_sq(exp, h) == doctest::Approx(closed).epsilon(1e-7));
        }
    }
}

TEST_CASE("sigma0_sq_stable_closed values") {
    CHECK(sigma0_sq_stable_closed(2.0, 1.0) == doctest::Approx(1.0));
    CHECK(sigma0_sq_stable_closed(1.5, 4.0) == doctest::Approx(3.19154).epsilon(1e-5));
    CHECK(sigma0_sq_stable_closed(1.5, 0.0) == 0.0);
}

TEST_CASE("sigma_alpha_sq: closed Brownian value, dominance, additivity") {
    const auto bm = CharacteristicExponent::brownian_half();
    CHECK(sigma_alpha_sq(bm, 0.5, 0.0) == 0.0);
    // 2(u^alpha(0) - u^alpha(1)) with u^alpha(x) = e^{-sqrt(2 alpha)|x|}/sqrt(2 alpha)
    CHECK(sigma_alpha_sq(bm, 0.5, 1.0) ==
          doctest::Approx(2.0 * (1.0 - std::exp(-1.0))).epsilon(1e-7));

    const auto stable = CharacteristicExponent::canonical_stable(1.5);
    for (double alpha : {0.5, 2.0}) {
        for (double h : {0.05, 0.3, 1.0}) {
            const double s0 = sigma0_sq(stable, h);
            const double sa = sigma_alpha_sq(stable, alpha, h);
            const double st = sigma_tilde_sq(stable, alpha, h);
            CHECK(sa <= s0 * (1.0 + 1e-9));
            CHECK(std::abs(s0 - sa - st) <= 2e-8 * s0);
        }
    }
    CHECK(sigma_tilde_sq(bm, 1.0, 0.0) == 0.0);
}

TEST_CASE("u_alpha against the Brownian closed form") {
    const auto bm = CharacteristicExponent::brownian_half();
    CHECK(u_alpha(bm, 0.5, 0.0) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(u_alpha(bm, 0.5, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-7));
    CHECK(u_alpha(bm, 0.5, -1.0) == doctest::Approx(u_alpha(bm, 0.5, 1.0)));
}

TEST_CASE("transition density values") {
    CHECK(transition_density(CharacteristicExponent::brownian_half(), 1.0, 0.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-8));
    CHECK(transition_density(CharacteristicExponent::canonical_stable(2.0), 1.0, 0.0) ==
          doctest::Approx(0.28209).epsilon(1e-5));
    CHECK(transition_density(CharacteristicExponent::canonical_stable(1.5), 1.0, 0.0) ==
          doctest::Approx(0.28735).epsilon(1e-5));
}

TEST_CASE("v_of_t values") {
    CHECK(v_of_t(CharacteristicExponent::brownian_half(), 0.0) == 0.0);
    CHECK(v_of_t(CharacteristicExponent::brownian_half(), 1.0) ==
          doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(1e-8));
    CHECK(v_of_t(CharacteristicExponent::canonical_stable(2.0), 1.0) ==
          doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-8));
}

TEST_CASE("normal absolute moments and the duplication identity") {
    CHECK(abs_moment_normal(2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(abs_moment_normal(1.0) == doctest::Approx(0.797884560802865).epsilon(1e-12));
    CHECK(abs_moment_normal(4.0) == doctest::Approx(3.0).epsilon(1e-12));
    // E|eta|^{p+2} = (p+1) E|eta|^p
    for (double p : {1.0, 2.0, 3.0}) {
        CHECK(abs_moment_normal(p + 2.0) ==
              doctest::Approx((p + 1.0) * abs_moment_normal(p)).epsilon(1e-12));
    }
}

TEST_CASE("stable limit constant") {
    CHECK(c_beta_p(2.0, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c_beta_p(2.0, 1.0) == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-12));
    // Brownian-motion constant is c(2, p) with the sigma0^2 = 2h rescaling
    for (double p : {1.0, 2.0, 3.0}) {
        CHECK(brownian_theorem_constant(p) ==
              doctest::Approx(c_beta_p(2.0, p) * std::pow(2.0, p / 2.0)).epsilon(1e-12));
    }
}

TEST_CASE("condition C_q trend checks") {
    const auto stable2 = StructureFunction::closed_form_stable(2.0);
    CHECK(check_condition_cq(stable2, 3.0).verdict == TrendReport::Verdict::Holds);

    const auto log_decay = StructureFunction::custom(
        [](double h) { return 1.0 / std::pow(std::log(1.0 / h), 2.0); }, true,
        "inverse-log");
    CHECK(check_condition_cq(log_decay, 3.0).verdict == TrendReport::Verdict::Holds);

    const auto constant =
        StructureFunction::custom([](double) { return 1.0; }, true, "constant");
    CHECK(check_condition_cq(constant, 3.0).verdict == TrendReport::Verdict::Fails);
}

TEST_CASE("condition Lambda_gamma trend checks") {
    const auto stable = CharacteristicExponent::canonical_stable(1.5);
    CHECK(check_condition_lambda_gamma(stable, 1.0).verdict ==
          TrendReport::Verdict::Holds);
    CHECK(check_condition_lambda_gamma(stable, 1.5).verdict ==
          TrendReport::Verdict::Fails);
    CHECK(check_condition_lambda_gamma(CharacteristicExponent::brownian_half(), 1.5)
              .verdict == TrendReport::Verdict::Holds);
}

TEST_CASE("concavity probe") {
    CHECK(check_concavity(StructureFunction::power_law(0.5), 1e-3).concave);
    CHECK_FALSE(check_concavity(StructureFunction::power_law(1.5), 1e-3).concave);
    const auto affine = StructureFunction::custom([](double h) { return 2.0 * h; }, true,
                                                  "affine");
    CHECK(check_concavity(affine, 1e-3).concave);
}
