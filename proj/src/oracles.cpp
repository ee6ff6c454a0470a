#include "levymoduli/oracles.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

#include "levymoduli/errors.hpp"
#include "levymoduli/quadrature.hpp"
#include "levymoduli/spectral.hpp"

namespace levymoduli {

namespace {

constexpr double kPi = std::numbers::pi;

// p_t(x) with the Gaussian shortcut for quadratic exponents; quadrature
// otherwise.  Gets hit inside nested integrals, so the shortcut matters.
double density(const CharacteristicExponent& exp, double t, double x, double tol) {
    const TailModel& tm = exp.tail();
    if (exp.is_stable_power() && tm.exponent == 2.0) {
        const double var = 2.0 * tm.coef * t;  // psi = c lambda^2 -> N(0, 2ct)
        return std::exp(-x * x / (2.0 * var)) / std::sqrt(2.0 * kPi * var);
    }
    if (exp.is_stable_power() && x == 0.0) {
        return std::tgamma(1.0 + 1.0 / tm.exponent) /
               (kPi * std::pow(t * tm.coef, 1.0 / tm.exponent));
    }
    return transition_density(exp, t, x, tol);
}

// Dirichlet-simplex closed form of E(L_t^0)^m for p_s(0) = C s^{-1/beta}.
double dirichlet_moment(double c, double beta, int m, double t) {
    const double big_c = std::tgamma(1.0 + 1.0 / beta) / (kPi * std::pow(c, 1.0 / beta));
    const double a = 1.0 - 1.0 / beta;
    return std::tgamma(static_cast<double>(m) + 1.0) * std::pow(big_c, m) *
           std::pow(std::tgamma(a), m) / std::tgamma(static_cast<double>(m) * a + 1.0) *
           std::pow(t, static_cast<double>(m) * a);
}

// int_0^u f(s) ds with the s = v^{beta/(beta-1)} substitution flattening an
// s^{-1/beta} singularity at 0.
template <typename F>
double singular_time_integral(const F& f, double u, double beta, double tol) {
    if (u <= 0.0) return 0.0;
    const double q = beta / (beta - 1.0);
    const auto g = [&](double v) {
        return f(std::pow(v, q)) * q * std::pow(v, q - 1.0);
    };
    return quad::integrate_rel(g, 1e-14, std::pow(u, 1.0 / q), tol).value;
}

}  // namespace

double local_time_moment(const MomentQuery& q) {
    if (q.m < 1) throw DomainError("local_time_moment: m must be >= 1");
    if (!(q.t > 0.0)) throw DomainError("local_time_moment: t must be positive");
    const TailModel& tm = q.exp.tail();
    const double beta = tm.exponent;
    if (!(beta > 1.0)) throw DomainError("local_time_moment: no local times for beta <= 1");

    if (q.x == q.z && q.exp.is_stable_power() && !q.force_quadrature) {
        return dirichlet_moment(tm.coef, beta, q.m, q.t);
    }
    if (q.m == 1) {
        const auto f = [&](double s) { return density(q.exp, s, q.x - q.z, 0.1 * q.tol); };
        return singular_time_integral(f, q.t, beta, q.tol);
    }
    if (q.m == 2) {
        // 2 int_0^t p_{t1}(x - z) V(t - t1) dt1, with V itself integrated
        // numerically when the fast path is being cross-validated.
        const auto v_inner = [&](double u) {
            if (!q.force_quadrature) return v_of_t(q.exp, u, 0.1 * q.tol);
            const auto p0 = [&](double s) { return density(q.exp, s, 0.0, 0.1 * q.tol); };
            return singular_time_integral(p0, u, beta, 0.1 * q.tol);
        };
        const auto f = [&](double s) {
            return density(q.exp, s, q.x - q.z, 0.1 * q.tol) * v_inner(q.t - s);
        };
        return 2.0 * singular_time_integral(f, q.t, beta, q.tol);
    }
    if (q.m == 3) {
        // Innermost double layer collapses to a two-variable Dirichlet integral
        // of p(0); closed for stable-power families, nested otherwise.
        const auto w = [&](double u) -> double {
            if (u <= 0.0) return 0.0;
            if (q.exp.is_stable_power()) {
                const double big_c = std::tgamma(1.0 + 1.0 / beta) /
                                     (kPi * std::pow(tm.coef, 1.0 / beta));
                const double a = 1.0 - 1.0 / beta;
                return big_c * big_c * std::pow(std::tgamma(a), 2) /
                       std::tgamma(2.0 * a + 1.0) * std::pow(u, 2.0 * a);
            }
            const auto inner = [&](double s) {
                return density(q.exp, s, 0.0, 0.1 * q.tol) * v_of_t(q.exp, u - s, 0.1 * q.tol);
            };
            return singular_time_integral(inner, u, beta, 10.0 * q.tol);
        };
        const auto f = [&](double s) {
            return density(q.exp, s, q.x - q.z, 0.1 * q.tol) * w(q.t - s);
        };
        return 6.0 * singular_time_integral(f, q.t, beta, q.tol);
    }
    throw DomainError("local_time_moment: quadrature path supports m <= 3 only");
}

double local_time_diff_second_moment(const CharacteristicExponent& exp, double t,
                                     double x, double y, double tol) {
    if (!(t > 0.0)) throw DomainError("local_time_diff_second_moment: t must be positive");
    if (x == y) return 0.0;
    const double beta = exp.tail().exponent;
    const double d = x - y;
    // inner face: int_0^u (p_s(0) - p_s(d)) ds
    const auto inner = [&](double u) {
        const auto f = [&](double s) {
            return density(exp, s, 0.0, 0.1 * tol) - density(exp, s, d, 0.1 * tol);
        };
        return singular_time_integral(f, u, beta, 0.1 * tol);
    };
    const auto outer = [&](double t1) {
        return (density(exp, t1, x, 0.1 * tol) + density(exp, t1, y, 0.1 * tol)) *
               inner(t - t1);
    };
    return 2.0 * singular_time_integral(outer, t, beta, tol);
}

double brownian_theorem_constant(double p) {
    if (p < 1.0) throw DomainError("brownian_theorem_constant: p must be >= 1");
    return std::pow(2.0, 1.5 * p) * std::tgamma((p + 1.0) / 2.0) / std::sqrt(kPi);
}

Fixture load_fixture(const std::string& fixtures_path, const std::string& key) {
    std::ifstream in(fixtures_path);
    if (!in) throw DomainError("cannot open fixtures file: " + fixtures_path);
    nlohmann::json j;
    in >> j;
    if (!j.contains(key)) throw DomainError("fixture not found: " + key);
    const auto& e = j.at(key);
    return Fixture{e.at("value").get<double>(), e.at("tol").get<double>(),
                   e.at("producedBy").get<std::string>()};
}

}  // namespace levymoduli
