#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#include "levymoduli/characteristic_exponent.hpp"
#include "levymoduli/errors.hpp"

using namespace levymoduli;

TEST_CASE("stable and brownian exponent values") {
    CHECK(CharacteristicExponent::canonical_stable(2.0).psi(3.0) == doctest::Approx(9.0));
    CHECK(CharacteristicExponent::brownian_half().psi(2.0) == doctest::Approx(2.0));
    CHECK(CharacteristicExponent::canonical_stable(1.5).psi(4.0) == doctest::Approx(8.0));
    CHECK(CharacteristicExponent::scaled_stable(3.0, 1.5).psi(4.0) == doctest::Approx(24.0));
}

TEST_CASE("psi is zero at the origin and rejects negative lambda") {
    const auto exp = CharacteristicExponent::canonical_stable(1.7);
    CHECK(exp.psi(0.0) == 0.0);
    CHECK_THROWS_AS(exp.psi(-1.0), DomainError);
}

TEST_CASE("tabulated origin anchor controls evaluation below the first knot") {
    const std::vector<std::pair<double, double>> bare = {{1.0, 1.0}, {2.0, 4.0}};
    CHECK_THROWS_AS(CharacteristicExponent::tabulated(bare, 2.0).psi(0.5), DomainError);
    const std::vector<std::pair<double, double>> anchored = {{0.0, 0.0}, {1.0, 1.0}, {2.0, 4.0}};
    // first segment slope 2 continues the power toward 0
    CHECK(CharacteristicExponent::tabulated(anchored, 2.0).psi(0.5) ==
          doctest::Approx(0.25));
}

TEST_CASE("index range validation") {
    CHECK_THROWS_AS(CharacteristicExponent::canonical_stable(1.0), DomainError);
    CHECK_THROWS_AS(CharacteristicExponent::canonical_stable(2.1), DomainError);
    CHECK_THROWS_AS(CharacteristicExponent::scaled_stable(0.0, 1.5), DomainError);
}

TEST_CASE("tabulated exponent interpolates knots exactly and extrapolates a power tail") {
    std::vector<std::pair<double, double>> knots;
    for (double lam : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        knots.emplace_back(lam, std::pow(lam, 1.5));
    }
    const auto exp = CharacteristicExponent::tabulated(knots, 1.5);
    for (const auto& [lam, psi] : knots) CHECK(exp.psi(lam) == doctest::Approx(psi));
    // log-log interpolation is exact on a pure power law
    CHECK(exp.psi(3.0) == doctest::Approx(std::pow(3.0, 1.5)));
    // beyond the last knot: power extrapolation with the declared tail index
    CHECK(exp.psi(100.0) == doctest::Approx(std::pow(100.0, 1.5)));
    CHECK(exp.tail().exponent == doctest::Approx(1.5));
    CHECK_FALSE(exp.is_stable_power());
}

TEST_CASE("tabulated rejects a non-integrable tail and bad knots") {
    std::vector<std::pair<double, double>> knots = {{1.0, 1.0}, {2.0, 2.0}};
    CHECK_THROWS_AS(CharacteristicExponent::tabulated(knots, 1.0), DomainError);
    CHECK_THROWS_AS(CharacteristicExponent::tabulated({{1.0, 1.0}}, 1.5), DomainError);
}

TEST_CASE("tabulated CSV round trip") {
    const std::string path = "tabulated_roundtrip.csv";
    {
        std::ofstream out(path);
        out << "lambda,psi\n";
        for (double lam : {0.25, 1.0, 4.0, 16.0}) {
            out << lam << "," << std::pow(lam, 1.3) << "\n";
        }
        out << "#tail_exponent=1.3\n";
    }
    const auto exp = CharacteristicExponent::from_csv(path);
    CHECK(exp.psi(4.0) == doctest::Approx(std::pow(4.0, 1.3)));
    CHECK(exp.psi(64.0) == doctest::Approx(std::pow(64.0, 1.3)));
    CHECK(exp.tail().exponent == doctest::Approx(1.3));
    std::remove(path.c_str());
}
