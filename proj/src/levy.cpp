#include "levymoduli/levy.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "levymoduli/errors.hpp"
#include "levymoduli/rng.hpp"
#include "levymoduli/spectral.hpp"

namespace levymoduli {

void SamplePath::to_csv(const std::string& path) const {
    std::ofstream out(path);
    out << "t,x\n";
    const double dt = t_end / static_cast<double>(n);
    for (std::size_t k = 0; k < values.size(); ++k) {
        out << (static_cast<double>(k) * dt) << "," << values[k] << "\n";
    }
}

SamplePath simulate_stable_path(double beta, double t, std::size_t n, std::uint64_t seed) {
    if (!(beta > 1.0 && beta <= 2.0)) {
        throw DomainError("simulate_stable_path: beta must lie in (1, 2] "
                          "(no local times at or below 1)");
    }
    if (!(t > 0.0) || n < 1) throw DomainError("simulate_stable_path: need t > 0, n >= 1");
    SamplePath path;
    path.t_end = t;
    path.n = n;
    path.family = CharacteristicExponent::canonical_stable(beta);
    path.values.resize(n + 1);
    path.values[0] = 0.0;
    Rng rng(seed);
    const double scale = std::pow(t / static_cast<double>(n), 1.0 / beta);
    if (beta == 2.0) {
        // e^{-(t/n) lambda^2} is N(0, 2t/n).
        const double sd = std::sqrt(2.0 * t / static_cast<double>(n));
        for (std::size_t k = 0; k < n; ++k) {
            path.values[k + 1] = path.values[k] + sd * rng.normal();
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            path.values[k + 1] = path.values[k] + scale * rng.symmetric_stable(beta);
        }
    }
    return path;
}

SamplePath simulate_brownian_half_path(double t, std::size_t n, std::uint64_t seed) {
    if (!(t > 0.0) || n < 1) throw DomainError("simulate_brownian_half_path: bad grid");
    SamplePath path;
    path.t_end = t;
    path.n = n;
    path.family = CharacteristicExponent::brownian_half();
    path.values.resize(n + 1);
    path.values[0] = 0.0;
    Rng rng(seed);
    const double sd = std::sqrt(t / static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k) {
        path.values[k + 1] = path.values[k] + sd * rng.normal();
    }
    return path;
}

std::size_t LocalTimeField::index_of(double x) const {
    const double raw = (x - origin) / eps;
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) > 1e-6) {
        throw AlignmentError("LocalTimeField: coordinate not on a bin center");
    }
    if (rounded < 0.0 || static_cast<std::size_t>(rounded) >= values.size()) {
        throw AlignmentError("LocalTimeField: coordinate outside the bin grid");
    }
    return static_cast<std::size_t>(rounded);
}

void LocalTimeField::to_csv(const std::string& path) const {
    std::ofstream out(path);
    out << "x,ell\n";
    for (std::size_t j = 0; j < values.size(); ++j) {
        out << center(j) << "," << values[j] << "\n";
    }
}

LocalTimeField estimate_local_time(const SamplePath& path, double eps, double a, double b) {
    if (!(eps > 0.0)) throw DomainError("estimate_local_time: eps must be positive");
    if (!(b > a)) throw DomainError("estimate_local_time: empty window");
    const auto [mn_it, mx_it] = std::minmax_element(path.values.begin(), path.values.end());
    const double lo = std::min(a, *mn_it) - eps;
    const double hi = std::max(b, *mx_it) + eps;
    // Bin centers sit on the global lattice {j eps} so fields with the same
    // eps are comparable across replicas.
    const long j_lo = static_cast<long>(std::floor(lo / eps)) - 1;
    const long j_hi = static_cast<long>(std::ceil(hi / eps)) + 1;

    LocalTimeField field;
    field.eps = eps;
    field.origin = static_cast<double>(j_lo) * eps;
    field.t = path.t_end;
    field.values.assign(static_cast<std::size_t>(j_hi - j_lo + 1), 0.0);

    const double weight = path.t_end / static_cast<double>(path.n) / eps;
    for (std::size_t k = 0; k < path.n; ++k) {  // left-endpoint occupation
        const long j = static_cast<long>(std::lround(path.values[k] / eps)) - j_lo;
        field.values[static_cast<std::size_t>(j)] += weight;
    }

    const double beta = path.family.tail().exponent;
    const double step_scale =
        std::pow(path.family.tail().coef * path.t_end / static_cast<double>(path.n),
                 1.0 / beta);
    field.resolution_warning = eps < 4.0 * step_scale;
    return field;
}

double lp_modulus_local_time(const LocalTimeField& field, double h, double p, double a,
                             double b, const StructureFunction& sigma0_sq) {
    if (!(h > 0.0)) throw DomainError("lp_modulus_local_time: h must be positive");
    if (p < 1.0) throw DomainError("lp_modulus_local_time: p must be >= 1");
    const double ratio = h / field.eps;
    if (std::abs(ratio - std::round(ratio)) > 1e-6 || std::round(ratio) < 1.0) {
        throw AlignmentError("lp_modulus_local_time: h must be a multiple of eps");
    }
    const std::size_t k = static_cast<std::size_t>(std::round(ratio));
    const long first = static_cast<long>(std::ceil((a - field.origin) / field.eps - 1e-9));
    const long last = static_cast<long>(std::ceil((b - field.origin) / field.eps - 1e-9));
    if (first < 0 || static_cast<std::size_t>(last) + k > field.values.size()) {
        throw AlignmentError("lp_modulus_local_time: [a, b + h] not inside the bin grid");
    }
    const double norm = std::pow(sigma0_sq.sigma(h), p);
    double sum = 0.0;
    for (long j = first; j < last; ++j) {
        const double d = field.values[static_cast<std::size_t>(j) + k] -
                         field.values[static_cast<std::size_t>(j)];
        sum += std::pow(std::abs(d), p);
    }
    return field.eps * sum / norm;
}

double rhs_local_time(const LocalTimeField& field, double p, double a, double b) {
    if (p < 1.0) throw DomainError("rhs_local_time: p must be >= 1");
    const long first = static_cast<long>(std::ceil((a - field.origin) / field.eps - 1e-9));
    const long last = static_cast<long>(std::ceil((b - field.origin) / field.eps - 1e-9));
    if (first < 0 || static_cast<std::size_t>(last) > field.values.size()) {
        throw AlignmentError("rhs_local_time: window not inside the bin grid");
    }
    double sum = 0.0;
    for (long j = first; j < last; ++j) {
        sum += std::pow(field.values[static_cast<std::size_t>(j)], p / 2.0);
    }
    return std::pow(2.0, p / 2.0) * abs_moment_normal(p) * field.eps * sum;
}

double quadratic_variation_sum(const LocalTimeField& field, std::size_t m) {
    if (m < 1) throw DomainError("quadratic_variation_sum: m must be positive");
    const double spacing = 1.0 / static_cast<double>(m);
    const double ratio = spacing / field.eps;
    if (std::abs(ratio - std::round(ratio)) > 1e-6 || std::round(ratio) < 1.0) {
        throw AlignmentError("quadratic_variation_sum: 1/m must be a multiple of eps");
    }
    const long k = static_cast<long>(std::round(ratio));
    // Global bin index of the grid origin; spacing-aligned positions are the
    // global indices divisible by k.  One extra difference is taken off each
    // end so boundary bins are compared against zero.
    const long g0 = static_cast<long>(std::llround(field.origin / field.eps));
    const long count = static_cast<long>(field.values.size());
    const auto value_at = [&](long global) -> double {
        const long j = global - g0;
        return (j >= 0 && j < count) ? field.values[static_cast<std::size_t>(j)] : 0.0;
    };
    long start = g0 - (g0 % k);
    if (start > g0) start -= k;  // first aligned index at or before the grid
    double sum = 0.0;
    for (long g = start; g <= g0 + count + k; g += k) {
        const double d = value_at(g) - value_at(g - k);
        sum += d * d;
    }
    return sum;
}

double field_min_center(const LocalTimeField& field) { return field.center(0); }

double field_max_center(const LocalTimeField& field) {
    return field.center(field.values.size() - 1);
}

}  // namespace levymoduli
