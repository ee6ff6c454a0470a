#pragma once

#include <string>
#include <utility>
#include <vector>

namespace levymoduli {

// Power-law lower envelope of psi: psi(lambda) = coef * lambda^exponent for
// lambda >= valid_from, exactly.  Stable families satisfy this everywhere;
// tabulated exponents satisfy it beyond the last knot by the extrapolation
// rule.  Quadrature tail bounds rely on the exactness.
struct TailModel {
    double coef = 1.0;
    double exponent = 2.0;
    double valid_from = 0.0;
};

// The Levy exponent psi(lambda) in E e^{i lambda X(t)} = e^{-t psi(lambda)}.
// Symmetric, so represented on lambda >= 0 only.
class CharacteristicExponent {
public:
    enum class Family { CanonicalStable, BrownianHalf, ScaledStable, Tabulated };

    // psi(lambda) = |lambda|^beta, 1 < beta <= 2.
    static CharacteristicExponent canonical_stable(double beta);
    // psi(lambda) = lambda^2 / 2 (standard Brownian motion).
    static CharacteristicExponent brownian_half();
    // psi(lambda) = c |lambda|^beta.
    static CharacteristicExponent scaled_stable(double c, double beta);
    // Log-log interpolated knots plus power-law extrapolation of index
    // tail_exponent (> 1) beyond the last knot.
    static CharacteristicExponent tabulated(std::vector<std::pair<double, double>> knots,
                                            double tail_exponent);
    // Two-column CSV: header "lambda,psi", rows, trailing "#tail_exponent=<g>".
    static CharacteristicExponent from_csv(const std::string& path);

    double psi(double lambda) const;

    Family family() const { return family_; }
    const TailModel& tail() const { return tail_; }

    // True when psi is exactly coef * lambda^index everywhere; enables the
    // closed-form transition density and V(t).
    bool is_stable_power() const { return family_ != Family::Tabulated; }
    double stable_coef() const { return tail_.coef; }
    double stable_index() const { return tail_.exponent; }

    std::string describe() const;

private:
    CharacteristicExponent() = default;

    Family family_ = Family::BrownianHalf;
    TailModel tail_;
    // Tabulated only: log(lambda), log(psi) knots.
    std::vector<double> log_lambda_;
    std::vector<double> log_psi_;
    bool has_origin_anchor_ = false;
    double first_segment_slope_ = 0.0;
};

}  // namespace levymoduli
