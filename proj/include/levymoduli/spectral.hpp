#pragma once

#include <string>
#include <vector>

#include "levymoduli/characteristic_exponent.hpp"

namespace levymoduli {

inline constexpr double kDefaultQuadTol = 1e-9;

// sigma_0^2(h) = (4/pi) int_0^inf sin^2(lambda h / 2) / psi(lambda) dlambda.
// Panel quadrature split at the integrand zeros plus an analytic power-law
// tail; relative tolerance tol.
double sigma0_sq(const CharacteristicExponent& exp, double h, double tol = kDefaultQuadTol);

// Closed form h^{beta-1} / (Gamma(beta) sin((pi/2)(beta-1))) for the
// canonical beta-stable exponent.
double sigma0_sq_stable_closed(double beta, double h);

// Same integral with denominator alpha + psi.
double sigma_alpha_sq(const CharacteristicExponent& exp, double alpha, double h,
                      double tol = kDefaultQuadTol);

// (4/pi) int sin^2(lambda h/2) alpha / (psi (alpha + psi)) dlambda; the
// complement of sigma_alpha_sq inside sigma0_sq.
double sigma_tilde_sq(const CharacteristicExponent& exp, double alpha, double h,
                      double tol = kDefaultQuadTol);

// alpha-potential density (1/pi) int_0^inf cos(lambda x) / (alpha + psi) dlambda.
double u_alpha(const CharacteristicExponent& exp, double alpha, double x,
               double tol = kDefaultQuadTol);

// Transition density p_t(x) = (1/pi) int_0^inf cos(lambda x) e^{-t psi} dlambda.
double transition_density(const CharacteristicExponent& exp, double t, double x,
                          double tol = kDefaultQuadTol);

// V(t) = int_0^t p_s(0) ds.  Closed form for stable-power families,
// singularity-substituted quadrature otherwise.
double v_of_t(const CharacteristicExponent& exp, double t, double tol = kDefaultQuadTol);

// E|eta|^p = 2^{p/2} Gamma((p+1)/2) / sqrt(pi) for standard normal eta.
double abs_moment_normal(double p);

// The stable limit constant
// c(beta, p) = (1/(Gamma(beta) sin((pi/2)(beta-1))))^{p/2} 2^p Gamma((p+1)/2)/sqrt(pi).
double c_beta_p(double beta, double p);

// Numerical trend evidence for the regularity conditions; never a proof.
struct TrendReport {
    enum class Verdict { Holds, Fails, Inconclusive };
    std::vector<double> abscissae;  // n or lambda values probed
    std::vector<double> ratios;
    Verdict verdict = Verdict::Inconclusive;
    std::string to_string() const;
};

struct TrendThresholds {
    double holds_below = 0.01;
    double fails_above = 0.1;
};

class StructureFunction;

// Ratio sigma(1/(n (log n)^{q+1})) / sigma(1/(log n)^q) on n = 10^2..10^nMax.
TrendReport check_condition_cq(const StructureFunction& sigma_sq, double q, int n_max = 8,
                               TrendThresholds thresholds = {});

// Ratio lambda^gamma / psi(lambda) on a geometric grid up to lambda_max.
TrendReport check_condition_lambda_gamma(const CharacteristicExponent& exp, double gamma,
                                         double lambda_max = 1e8,
                                         TrendThresholds thresholds = {});

struct ConcavityReport {
    bool concave = false;
    bool monotone = false;
    double worst_second_difference = 0.0;
};

ConcavityReport check_concavity(const StructureFunction& sigma_sq, double delta,
                                int grid_size = 64);

}  // namespace levymoduli
