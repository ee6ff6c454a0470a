#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>

#include "levymoduli/errors.hpp"

namespace levymoduli::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;  // absolute error estimate
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1, 1] (positive half; nodes are
// symmetric).  Even-indexed Kronrod nodes coincide with the Gauss-7 nodes.
inline constexpr double kronrod_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kronrod_weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double gauss_weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <typename F>
Result gk15(const F& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double kronrod = 0.0;
    double gauss = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double node = half * kronrod_nodes[i];
        const double fsum = (i == 7) ? f(center)
                                     : f(center - node) + f(center + node);
        kronrod += kronrod_weights[i] * fsum;
        if (i % 2 == 1) gauss += gauss_weights[i / 2] * fsum;
    }
    const double value = kronrod * half;
    const double err = std::abs((kronrod - gauss) * half);
    // Standard QUADPACK-style sharpening of the raw difference.
    const double scaled = std::pow(200.0 * err / std::max(std::abs(value), 1e-300), 1.5);
    return {value, err * std::min(1.0, scaled) + std::abs(value) * 1e-15};
}

template <typename F>
void adapt(const F& f, double a, double b, double tol, int depth, Result& acc) {
    const Result whole = gk15(f, a, b);
    if (whole.error <= tol || depth <= 0) {
        acc.value += whole.value;
        acc.error += whole.error;
        return;
    }
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, tol * 0.5, depth - 1, acc);
    adapt(f, mid, b, tol * 0.5, depth - 1, acc);
}

}  // namespace detail

// Fixed GK15 rule on [a, b]; cheap building block for panel sums where the
// caller controls the panel width.
template <typename F>
Result gauss_kronrod_15(const F& f, double a, double b) {
    return detail::gk15(f, a, b);
}

// Adaptive bisection to an absolute tolerance.  Throws QuadratureFailure if
// the estimate is still above 100x the request after full refinement.
template <typename F>
Result integrate(const F& f, double a, double b, double abs_tol, int max_depth = 40) {
    Result acc;
    detail::adapt(f, a, b, abs_tol, max_depth, acc);
    if (acc.error > 100.0 * abs_tol && acc.error > 1e-12 * std::abs(acc.value)) {
        throw QuadratureFailure("adaptive quadrature did not converge", acc.error);
    }
    return acc;
}

// Relative-tolerance convenience: one pilot pass to scale the request.
template <typename F>
Result integrate_rel(const F& f, double a, double b, double rel_tol, int max_depth = 40) {
    const Result pilot = detail::gk15(f, a, b);
    const double scale = std::max(std::abs(pilot.value), 1e-300);
    return integrate(f, a, b, rel_tol * scale, max_depth);
}

}  // namespace levymoduli::quad
