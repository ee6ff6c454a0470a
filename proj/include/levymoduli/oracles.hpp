#pragma once

#include <string>

#include "levymoduli/characteristic_exponent.hpp"

namespace levymoduli {

struct MomentQuery {
    CharacteristicExponent exp = CharacteristicExponent::brownian_half();
    int m = 1;
    double t = 1.0;
    double x = 0.0;
    double z = 0.0;
    double tol = 1e-9;
    // Skip the closed-form fast path; used to cross-validate the Dirichlet
    // reduction against the nested quadrature it replaces.
    bool force_quadrature = false;
};

// E^z((L_t^x)^m) = m! int_{0<t_1<...<t_m<t} p_{t_1}(x-z) prod p_{dt_i}(0) dt.
// Closed Dirichlet-simplex reduction for stable-power families at x = z,
// nested quadrature (m <= 3) otherwise.
double local_time_moment(const MomentQuery& q);

// E^0((L_t^x - L_t^y)^2) by two-dimensional quadrature with singularity
// substitutions at both simplex faces.
double local_time_diff_second_moment(const CharacteristicExponent& exp, double t,
                                     double x, double y, double tol = 1e-9);

// 2^{3p/2} Gamma((p+1)/2) / sqrt(pi): the Brownian local-time limit constant.
double brownian_theorem_constant(double p);

// Golden-value fixtures: JSON map descriptor -> {value, tol, producedBy}.
struct Fixture {
    double value = 0.0;
    double tol = 0.0;
    std::string produced_by;
};

Fixture load_fixture(const std::string& fixtures_path, const std::string& key);

}  // namespace levymoduli
