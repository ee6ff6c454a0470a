#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levymoduli/characteristic_exponent.hpp"
#include "levymoduli/structure_function.hpp"

namespace levymoduli {

// Discrete skeleton of a Levy path on [0, t_end], values[0] = 0.
struct SamplePath {
    double t_end = 1.0;
    std::size_t n = 0;  // steps; values has n + 1 entries
    std::vector<double> values;
    CharacteristicExponent family = CharacteristicExponent::brownian_half();

    void to_csv(const std::string& path) const;
};

// i.i.d. symmetric stable increments with characteristic function
// e^{-(t/n)|lambda|^beta} per step (canonical scaling; beta = 2 is sqrt(2)
// times Brownian motion).
SamplePath simulate_stable_path(double beta, double t, std::size_t n, std::uint64_t seed);

// Brownian motion proper: psi(lambda) = lambda^2/2, increment variance t/n.
SamplePath simulate_brownian_half_path(double t, std::size_t n, std::uint64_t seed);

// Occupation-density estimate on a uniform bin grid of spacing eps.
struct LocalTimeField {
    double eps = 0.0;
    double origin = 0.0;  // center of bin 0
    std::vector<double> values;
    double t = 0.0;
    bool resolution_warning = false;  // eps below the per-step displacement scale

    double center(std::size_t j) const { return origin + static_cast<double>(j) * eps; }
    std::size_t index_of(double x) const;  // x must be a bin center
    double at(double x) const { return values[index_of(x)]; }
    void to_csv(const std::string& path) const;
};

// Bin counting of the path skeleton with left-endpoint occupation:
// ell_j = (t/n) #{k : X_k in bin_j} / eps.  eps * sum ell_j = t exactly.
// Bins cover the union of [a, b] and the realized path range.
LocalTimeField estimate_local_time(const SamplePath& path, double eps, double a, double b);

// eps * sum_{x_j in [a, b)} |ell(x_j + h) - ell(x_j)|^p / sigma0(h)^p.
double lp_modulus_local_time(const LocalTimeField& field, double h, double p, double a,
                             double b, const StructureFunction& sigma0_sq);

// 2^{p/2} E|eta|^p eps sum_{x_j in [a, b)} ell_j^{p/2}.
double rhs_local_time(const LocalTimeField& field, double p, double a, double b);

// sum_j (ell(j/m) - ell((j-1)/m))^2 over the whole grid; 1/m must be a
// multiple of eps.
double quadratic_variation_sum(const LocalTimeField& field, std::size_t m);

// Realized spatial range helpers for full-support windows.
double field_min_center(const LocalTimeField& field);
double field_max_center(const LocalTimeField& field);

}  // namespace levymoduli
