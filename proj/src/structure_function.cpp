#include "levymoduli/structure_function.hpp"

#include <cmath>
#include <sstream>

#include "levymoduli/errors.hpp"

namespace levymoduli {

StructureFunction StructureFunction::spectral(CharacteristicExponent exp, double alpha,
                                              double tol) {
    if (alpha < 0.0) throw DomainError("structure function: alpha must be nonnegative");
    StructureFunction s;
    // sigma_0^2 of a stable-power exponent is proportional to h^{beta-1},
    // beta - 1 <= 1, hence concave.  Tabulated exponents make no claim.
    s.concave_ = exp.is_stable_power() && alpha == 0.0;
    s.tol_ = tol;
    std::ostringstream name;
    name << "spectral(" << exp.describe() << ",alpha=" << alpha << ")";
    s.name_ = name.str();
    s.eval_ = [exp = std::move(exp), alpha, tol](double h) {
        return alpha == 0.0 ? sigma0_sq(exp, h, tol) : sigma_alpha_sq(exp, alpha, h, tol);
    };
    s.cache_enabled_ = true;
    s.cache_mutex_ = std::make_shared<std::mutex>();
    s.cache_ = std::make_shared<std::map<double, double>>();
    return s;
}

StructureFunction StructureFunction::power_law(double r) {
    if (!(r > 0.0 && r < 2.0)) throw DomainError("power-law exponent must lie in (0, 2)");
    StructureFunction s;
    s.concave_ = r <= 1.0;
    s.tol_ = 0.0;
    std::ostringstream name;
    name << "power-law(r=" << r << ")";
    s.name_ = name.str();
    s.eval_ = [r](double h) { return std::pow(h, r); };
    return s;
}

StructureFunction StructureFunction::closed_form_stable(double beta) {
    if (!(beta > 1.0 && beta <= 2.0)) {
        throw DomainError("closed-form stable index must lie in (1, 2]");
    }
    StructureFunction s;
    s.concave_ = true;
    s.tol_ = 0.0;
    std::ostringstream name;
    name << "stable-closed(beta=" << beta << ")";
    s.name_ = name.str();
    s.eval_ = [beta](double h) { return sigma0_sq_stable_closed(beta, h); };
    return s;
}

StructureFunction StructureFunction::custom(std::function<double(double)> f, bool concave,
                                            std::string name) {
    StructureFunction s;
    s.concave_ = concave;
    s.tol_ = 0.0;
    s.name_ = std::move(name);
    s.eval_ = std::move(f);
    return s;
}

double StructureFunction::value(double h) const {
    if (h < 0.0) throw DomainError("structure function: h must be nonnegative");
    if (!cache_enabled_) return eval_(h);
    {
        std::lock_guard lock(*cache_mutex_);
        if (auto it = cache_->find(h); it != cache_->end()) return it->second;
    }
    const double v = eval_(h);
    std::lock_guard lock(*cache_mutex_);
    cache_->emplace(h, v);
    return v;
}

double StructureFunction::sigma(double h) const { return std::sqrt(value(h)); }

}  // namespace levymoduli
