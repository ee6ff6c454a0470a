#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "levymoduli/structure_function.hpp"

namespace levymoduli {

// Stationary-increment Gaussian path on the uniform grid a, a+dx, ..., b+h_max,
// pinned to 0 at a.
struct GaussianPath {
    double a = 0.0;
    double b = 1.0;
    double dx = 1.0 / 256;
    double h_max = 0.0;
    std::vector<double> values;  // length round((b - a + h_max)/dx) + 1

    std::size_t index_of(double x) const;
    double at(double x) const { return values[index_of(x)]; }
    void to_csv(const std::string& path) const;
};

// Covariance of unit-lag increments at separation lag*dx:
// (sigma^2((lag+1)dx) + sigma^2(|lag-1|dx) - 2 sigma^2(lag dx)) / 2.
double increment_autocovariance(const StructureFunction& sigma_sq, double dx, long lag);

// The normalized increment-covariance kernel rho_h(s); rho_h(0) = 1 and
// |rho_h| <= 1.
class RhoKernel {
public:
    RhoKernel(StructureFunction sigma_sq, double h);
    double operator()(double s) const;
    double h() const { return h_; }

private:
    StructureFunction sigma_sq_;
    double h_;
    double denom_;
};

// int_a^b int_a^b |rho_h(x - y)| dx dy via the one-dimensional reduction
// 2 int_0^{b-a} |rho_h(s)| (b - a - s) ds.
double rho_double_integral(const RhoKernel& kernel, double a, double b,
                           double tol = 1e-8);

// Exact sampling of (G(x) - G(a)) on the extended grid [a, b + h_max] by
// circulant embedding of the increment autocovariance, with a dense
// factorization fallback when the embedding goes negative.
GaussianPath simulate_stationary_increment_path(const StructureFunction& sigma_sq,
                                                double a, double b, double dx,
                                                double h_max, std::uint64_t seed);

// Riemann sum dx * sum_{x in [a,b)} |G(x+h) - G(x)|^p / sigma(h)^p.
// h must be an integer multiple of dx; no interpolation.
double lp_modulus_gaussian(const GaussianPath& path, double h, double p, double a,
                           double b, const StructureFunction& sigma_sq);

// Same with the squared process: |G^2(x+h) - G^2(x)|^p / sigma(h)^p.
double lp_modulus_squared_gaussian(const GaussianPath& path, double h, double p,
                                   double a, double b,
                                   const StructureFunction& sigma_sq);

}  // namespace levymoduli
