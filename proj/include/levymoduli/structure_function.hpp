#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "levymoduli/characteristic_exponent.hpp"
#include "levymoduli/spectral.hpp"

namespace levymoduli {

// sigma^2(h), the increment variance of a stationary-increment Gaussian
// process.  Spectral evaluations are cached; the cache is guarded so the
// evaluator is safe to share across threads.
class StructureFunction {
public:
    // alpha = 0 gives sigma_0^2, alpha > 0 gives sigma_alpha^2.
    static StructureFunction spectral(CharacteristicExponent exp, double alpha = 0.0,
                                      double tol = kDefaultQuadTol);
    // sigma^2(h) = h^r, 0 < r < 2 (fractional Brownian motion).
    static StructureFunction power_law(double r);
    // sigma_0^2 of the canonical beta-stable process, closed form.
    static StructureFunction closed_form_stable(double beta);
    // Arbitrary evaluator; used by condition checkers and tests.
    static StructureFunction custom(std::function<double(double)> f, bool concave,
                                    std::string name = "custom");

    double value(double h) const;           // sigma^2(h)
    double sigma(double h) const;           // sqrt(sigma^2(h))

    bool concave_declared() const { return concave_; }
    double quadrature_tolerance() const { return tol_; }
    const std::string& describe() const { return name_; }

private:
    StructureFunction() = default;

    std::function<double(double)> eval_;
    bool concave_ = false;
    double tol_ = kDefaultQuadTol;
    std::string name_;
    bool cache_enabled_ = false;
    mutable std::shared_ptr<std::mutex> cache_mutex_;
    mutable std::shared_ptr<std::map<double, double>> cache_;
};

}  // namespace levymoduli
