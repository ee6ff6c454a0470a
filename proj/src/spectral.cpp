#include "levymoduli/spectral.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "levymoduli/errors.hpp"
#include "levymoduli/quadrature.hpp"
#include "levymoduli/structure_function.hpp"

namespace levymoduli {

namespace {

constexpr double kPi = std::numbers::pi;

// Tail data handed to the panel engine once the truncation point has passed
// tail.valid_from: the exact mean integral int_L^inf g dlambda, plus g and
// g' at L for the stationary-phase correction of the oscillatory part.
struct TailEval {
    double mean_integral;
    double mean_error;  // bound on the error of mean_integral
    double g;
    double g_prime;
};

// int_L^inf g(lambda) dlambda for g = 1 / (alpha + c lambda^gamma), exact
// model beyond the tail onset.  Substitution lambda = L / v maps to a finite
// interval; the v^{gamma-2} endpoint singularity is integrable (gamma > 1).
double tail_mean_numeric(double alpha, double c, double gamma, double big_l,
                         const std::function<double(double)>& g_of_lambda, double tol) {
    (void)alpha;
    (void)c;
    (void)gamma;
    const auto f = [&](double v) {
        const double lam = big_l / v;
        return big_l / (v * v) * g_of_lambda(lam);
    };
    return quad::integrate_rel(f, 1e-14, 1.0, tol).value;
}

// Panel engine for (4/pi) int_0^inf sin^2(lambda h / 2) g(lambda) dlambda.
// Panels end at the integrand zeros lambda = 2 k pi / h; beyond the last
// panel the mean of sin^2 is pulled out analytically and the oscillatory
// remainder is handled by two integration-by-parts terms with bound
// |g'(L)| / (2 h^2).
double sine_spectral_integral(const std::function<double(double)>& g,
                              const std::function<TailEval(double)>& tail, double tail_from,
                              double h, double tol) {
    if (h == 0.0) return 0.0;
    const double period = 2.0 * kPi / h;
    const auto f = [&](double lam) {
        const double s = std::sin(lam * h / 2.0);
        return s * s * g(lam);
    };
    double acc = quad::integrate_rel(f, 0.0, period, 0.1 * tol).value;
    constexpr std::size_t kMaxPanels = 4'000'000;
    double last_bound = 0.0;
    for (std::size_t k = 1; k <= kMaxPanels; ++k) {
        const double lo = static_cast<double>(k) * period;
        const double hi = lo + period;
        acc += quad::gauss_kronrod_15(f, lo, lo + 0.5 * period).value +
               quad::gauss_kronrod_15(f, lo + 0.5 * period, hi).value;
        if (hi < tail_from || k < 2) continue;
        const TailEval te = tail(hi);
        const double mean = 0.5 * te.mean_integral;
        // -(1/2) int_L^inf cos(h lambda) g; sin(hL) = 0, cos(hL) = 1 at L = k period.
        const double osc = 0.5 * te.g_prime / (h * h);
        const double bound = 0.5 * std::abs(te.g_prime) / (h * h) + 0.5 * te.mean_error;
        const double total = acc + mean + osc;
        if (bound <= tol * total) {
            return 4.0 / kPi * total;
        }
        last_bound = bound;
    }
    throw QuadratureFailure("spectral sine integral: panel budget exhausted", last_bound);
}

double require_nonneg_h(double h, const char* op) {
    if (h < 0.0) throw DomainError(std::string(op) + ": h must be nonnegative");
    return h;
}

}  // namespace

double sigma0_sq(const CharacteristicExponent& exp, double h, double tol) {
    require_nonneg_h(h, "sigma0_sq");
    if (h == 0.0) return 0.0;
    const TailModel& t = exp.tail();
    const auto g = [&](double lam) { return 1.0 / exp.psi(lam); };
    const auto tail = [&](double big_l) {
        const double mean = std::pow(big_l, 1.0 - t.exponent) / (t.coef * (t.exponent - 1.0));
        const double gl = 1.0 / (t.coef * std::pow(big_l, t.exponent));
        const double gp = -t.exponent * gl / big_l;
        return TailEval{mean, 0.0, gl, gp};
    };
    return sine_spectral_integral(g, tail, t.valid_from, h, tol);
}

double sigma0_sq_stable_closed(double beta, double h) {
    if (!(beta > 1.0 && beta <= 2.0)) {
        throw DomainError("sigma0_sq_stable_closed: beta must lie in (1, 2]");
    }
    require_nonneg_h(h, "sigma0_sq_stable_closed");
    return std::pow(h, beta - 1.0) /
           (std::tgamma(beta) * std::sin(kPi / 2.0 * (beta - 1.0)));
}

double sigma_alpha_sq(const CharacteristicExponent& exp, double alpha, double h, double tol) {
    if (!(alpha > 0.0)) throw DomainError("sigma_alpha_sq: alpha must be positive");
    require_nonneg_h(h, "sigma_alpha_sq");
    if (h == 0.0) return 0.0;
    const TailModel& t = exp.tail();
    const auto g = [&](double lam) { return 1.0 / (alpha + exp.psi(lam)); };
    const auto tail = [&](double big_l) {
        const double mean = tail_mean_numeric(alpha, t.coef, t.exponent, big_l, g, 0.1 * tol);
        const double psi_l = t.coef * std::pow(big_l, t.exponent);
        const double gl = 1.0 / (alpha + psi_l);
        const double gp = -t.exponent * psi_l / big_l * gl * gl;
        return TailEval{mean, 0.2 * tol * mean, gl, gp};
    };
    return sine_spectral_integral(g, tail, t.valid_from, h, tol);
}

double sigma_tilde_sq(const CharacteristicExponent& exp, double alpha, double h, double tol) {
    if (!(alpha > 0.0)) throw DomainError("sigma_tilde_sq: alpha must be positive");
    require_nonneg_h(h, "sigma_tilde_sq");
    if (h == 0.0) return 0.0;
    const TailModel& t = exp.tail();
    const auto g = [&](double lam) {
        const double psi = exp.psi(lam);
        return alpha / (psi * (alpha + psi));
    };
    const auto tail = [&](double big_l) {
        const double mean = tail_mean_numeric(alpha, t.coef, t.exponent, big_l, g, 0.1 * tol);
        const double psi_l = t.coef * std::pow(big_l, t.exponent);
        const double psi_p = t.exponent * psi_l / big_l;
        const double gl = alpha / (psi_l * (alpha + psi_l));
        const double gp = -alpha * psi_p * (alpha + 2.0 * psi_l) /
                          (psi_l * psi_l * (alpha + psi_l) * (alpha + psi_l));
        return TailEval{mean, 0.2 * tol * mean, gl, gp};
    };
    return sine_spectral_integral(g, tail, t.valid_from, h, tol);
}

double u_alpha(const CharacteristicExponent& exp, double alpha, double x, double tol) {
    if (!(alpha > 0.0)) throw DomainError("u_alpha: alpha must be positive");
    x = std::abs(x);  // cosine is even
    const TailModel& t = exp.tail();
    const auto g = [&](double lam) { return 1.0 / (alpha + exp.psi(lam)); };
    if (x == 0.0) {
        const double big_l = std::max(t.valid_from, 1.0);
        const double body = quad::integrate_rel(g, 0.0, big_l, 0.1 * tol).value;
        const double tail_part = tail_mean_numeric(alpha, t.coef, t.exponent, big_l, g, 0.1 * tol);
        return (body + tail_part) / kPi;
    }
    const auto f = [&](double lam) { return std::cos(lam * x) * g(lam); };
    const double half_period = kPi / x;
    double acc = quad::integrate_rel(f, 0.0, 0.5 * half_period, 0.1 * tol).value;
    constexpr std::size_t kMaxPanels = 4'000'000;
    double last_bound = 0.0;
    for (std::size_t k = 0; k < kMaxPanels; ++k) {
        const double lo = (static_cast<double>(k) + 0.5) * half_period;
        const double hi = lo + half_period;
        acc += quad::gauss_kronrod_15(f, lo, hi).value;
        if (hi < t.valid_from || k < 2) continue;
        const double psi_l = t.coef * std::pow(hi, t.exponent);
        const double gl = 1.0 / (alpha + psi_l);
        const double gp = -t.exponent * psi_l / hi * gl * gl;
        // int_L^inf cos(x lambda) g = -sin(xL) g / x - cos(xL) g' / x^2 + O(|g'|/x^2)
        const double osc = -std::sin(x * hi) * gl / x - std::cos(x * hi) * gp / (x * x);
        const double bound = std::abs(gp) / (x * x);
        const double total = acc + osc;
        if (bound <= tol * std::max(std::abs(total), 1e-12)) {
            return total / kPi;
        }
        last_bound = bound;
    }
    throw QuadratureFailure("u_alpha: panel budget exhausted", last_bound);
}

double transition_density(const CharacteristicExponent& exp, double t, double x, double tol) {
    if (!(t > 0.0)) throw DomainError("transition_density: t must be positive");
    x = std::abs(x);
    const TailModel& tm = exp.tail();
    // Truncate where t psi >= 50; the discarded tail is below e^{-50} times
    // the integrand scale.
    const double lam_cut = std::pow(50.0 / (t * tm.coef), 1.0 / tm.exponent);
    const double big_l = std::max(tm.valid_from * 1.000001, lam_cut);
    const auto f = [&](double lam) {
        return std::cos(lam * x) * std::exp(-t * exp.psi(lam));
    };
    return quad::integrate_rel(f, 0.0, big_l, tol).value / kPi;
}

namespace {

// p_t(0) for an exact power exponent psi = c lambda^beta.
double stable_density_at_zero(double c, double beta, double t) {
    return std::tgamma(1.0 + 1.0 / beta) / (kPi * std::pow(t * c, 1.0 / beta));
}

}  // namespace

double v_of_t(const CharacteristicExponent& exp, double t, double tol) {
    if (t < 0.0) throw DomainError("v_of_t: t must be nonnegative");
    if (t == 0.0) return 0.0;
    const TailModel& tm = exp.tail();
    const double beta = tm.exponent;
    if (!(beta > 1.0)) throw DomainError("v_of_t: tail exponent must exceed 1");
    if (exp.is_stable_power()) {
        return stable_density_at_zero(tm.coef, beta, 1.0) * beta / (beta - 1.0) *
               std::pow(t, 1.0 - 1.0 / beta);
    }
    // s = u^q with q = beta/(beta-1) flattens the s^{-1/beta} singularity.
    const double q = beta / (beta - 1.0);
    const auto f = [&](double u) {
        const double s = std::pow(u, q);
        return transition_density(exp, s, 0.0, 0.1 * tol) * q * std::pow(u, q - 1.0);
    };
    return quad::integrate_rel(f, 1e-14, std::pow(t, 1.0 / q), tol).value;
}

double abs_moment_normal(double p) {
    if (p < 0.0) throw DomainError("abs_moment_normal: p must be nonnegative");
    return std::pow(2.0, p / 2.0) * std::tgamma((p + 1.0) / 2.0) / std::sqrt(kPi);
}

double c_beta_p(double beta, double p) {
    if (!(beta > 1.0 && beta <= 2.0)) {
        throw DomainError("c_beta_p: beta must lie in (1, 2]");
    }
    if (p < 1.0) throw DomainError("c_beta_p: p must be >= 1");
    const double normalizer = 1.0 / (std::tgamma(beta) * std::sin(kPi / 2.0 * (beta - 1.0)));
    return std::pow(normalizer, p / 2.0) * std::pow(2.0, p) *
           std::tgamma((p + 1.0) / 2.0) / std::sqrt(kPi);
}

namespace {

TrendReport classify(std::vector<double> abscissae, std::vector<double> ratios,
                     TrendThresholds th) {
    TrendReport r;
    r.abscissae = std::move(abscissae);
    r.ratios = std::move(ratios);
    bool decreasing = true;
    bool nondecreasing = true;
    double min_ratio = r.ratios.front();
    for (std::size_t i = 1; i < r.ratios.size(); ++i) {
        if (r.ratios[i] >= r.ratios[i - 1] * (1.0 - 1e-12)) decreasing = false;
        if (r.ratios[i] < r.ratios[i - 1] * (1.0 - 1e-12)) nondecreasing = false;
        min_ratio = std::min(min_ratio, r.ratios[i]);
    }
    // A sequence can head to 0 far too slowly (log scales) to cross the
    // absolute threshold at probe-able n; a strict monotone decay that has
    // already shed a quarter of its starting value counts as evidence too.
    const bool slow_decay = r.ratios.back() <= 0.75 * r.ratios.front();
    if (decreasing && (r.ratios.back() < th.holds_below || slow_decay)) {
        r.verdict = TrendReport::Verdict::Holds;
    } else if (nondecreasing && min_ratio >= th.fails_above) {
        r.verdict = TrendReport::Verdict::Fails;
    } else {
        r.verdict = TrendReport::Verdict::Inconclusive;
    }
    return r;
}

}  // namespace

std::string TrendReport::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < ratios.size(); ++i) {
        out << abscissae[i] << " -> " << ratios[i] << "\n";
    }
    switch (verdict) {
        case Verdict::Holds: out << "verdict: holds"; break;
        case Verdict::Fails: out << "verdict: fails"; break;
        case Verdict::Inconclusive: out << "verdict: inconclusive"; break;
    }
    return out.str();
}

TrendReport check_condition_cq(const StructureFunction& sigma_sq, double q, int n_max,
                               TrendThresholds thresholds) {
    if (!(q > 1.0)) throw DomainError("check_condition_cq: q must exceed 1");
    std::vector<double> ns, ratios;
    for (int k = 2; k <= n_max; ++k) {
        const double n = std::pow(10.0, k);
        const double ln = std::log(n);
        const double num = std::sqrt(sigma_sq.value(1.0 / (n * std::pow(ln, q + 1.0))));
        const double den = std::sqrt(sigma_sq.value(1.0 / std::pow(ln, q)));
        ns.push_back(n);
        ratios.push_back(num / den);
    }
    return classify(std::move(ns), std::move(ratios), thresholds);
}

TrendReport check_condition_lambda_gamma(const CharacteristicExponent& exp, double gamma,
                                         double lambda_max, TrendThresholds thresholds) {
    if (!(gamma > 0.0)) throw DomainError("check_condition_lambda_gamma: gamma must be positive");
    std::vector<double> lams, ratios;
    for (double lam = 10.0; lam <= lambda_max * 1.000001; lam *= 10.0) {
        lams.push_back(lam);
        ratios.push_back(std::pow(lam, gamma) / exp.psi(lam));
    }
    return classify(std::move(lams), std::move(ratios), thresholds);
}

ConcavityReport check_concavity(const StructureFunction& sigma_sq, double delta,
                                int grid_size) {
    if (!(delta > 0.0)) throw DomainError("check_concavity: delta must be positive");
    if (grid_size < 3) throw DomainError("check_concavity: grid too small");
    const double step = delta / (grid_size - 1);
    std::vector<double> values(grid_size);
    for (int i = 0; i < grid_size; ++i) values[i] = sigma_sq.value(i * step);
    const double slack = 1e3 * sigma_sq.quadrature_tolerance() * values.back() + 1e-14;
    ConcavityReport report;
    report.concave = true;
    report.monotone = true;
    for (int i = 1; i + 1 < grid_size; ++i) {
        const double d2 = values[i + 1] + values[i - 1] - 2.0 * values[i];
        report.worst_second_difference = std::max(report.worst_second_difference, d2);
        if (d2 > slack) report.concave = false;
    }
    for (int i = 1; i < grid_size; ++i) {
        if (values[i] < values[i - 1] - slack) report.monotone = false;
    }
    return report;
}

}  // namespace levymoduli
