#include "levymoduli/gaussian.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <map>
#include <mutex>
#include <tuple>

#include "levymoduli/errors.hpp"
#include "levymoduli/quadrature.hpp"
#include "levymoduli/rng.hpp"

namespace levymoduli {

namespace {

std::size_t aligned_index(double x, double origin, double dx, const char* what) {
    const double raw = (x - origin) / dx;
    const double rounded = std::round(raw);
    if (std::abs(raw - rounded) > 1e-6) {
        throw AlignmentError(std::string(what) + ": coordinate not on the grid");
    }
    if (rounded < 0.0) {
        throw AlignmentError(std::string(what) + ": coordinate left of the grid");
    }
    return static_cast<std::size_t>(rounded);
}

}  // namespace

std::size_t GaussianPath::index_of(double x) const {
    const std::size_t i = aligned_index(x, a, dx, "GaussianPath");
    if (i >= values.size()) throw AlignmentError("GaussianPath: coordinate beyond the grid");
    return i;
}

void GaussianPath::to_csv(const std::string& path) const {
    std::ofstream out(path);
    out << "x,value\n";
    for (std::size_t i = 0; i < values.size(); ++i) {
        out << (a + static_cast<double>(i) * dx) << "," << values[i] << "\n";
    }
}

double increment_autocovariance(const StructureFunction& sigma_sq, double dx, long lag) {
    if (lag < 0) throw DomainError("increment_autocovariance: lag must be nonnegative");
    const double d = static_cast<double>(lag) * dx;
    return 0.5 * (sigma_sq.value(d + dx) + sigma_sq.value(std::abs(d - dx)) -
                  2.0 * sigma_sq.value(d));
}

RhoKernel::RhoKernel(StructureFunction sigma_sq, double h)
    : sigma_sq_(std::move(sigma_sq)), h_(h) {
    if (!(h > 0.0)) throw DomainError("rho kernel: h must be positive");
    denom_ = 2.0 * sigma_sq_.value(h);
}

double RhoKernel::operator()(double s) const {
    s = std::abs(s);
    return (sigma_sq_.value(s + h_) + sigma_sq_.value(std::abs(s - h_)) -
            2.0 * sigma_sq_.value(s)) /
           denom_;
}

double rho_double_integral(const RhoKernel& kernel, double a, double b, double tol) {
    if (!(b > a)) throw DomainError("rho_double_integral: window must be nonempty");
    const double c = b - a;
    const auto f = [&](double s) { return std::abs(kernel(s)) * (c - s); };
    // |rho_h| has a kink at s = h where the sign flips for concave sigma^2.
    const double split = std::min(kernel.h(), c);
    double total = quad::integrate_rel(f, 0.0, split, tol).value;
    if (split < c) total += quad::integrate(f, split, c, tol * std::max(total, c * 1e-6)).value;
    return 2.0 * total;
}

namespace {

// Circulant eigenvalues of the increment autocovariance, cached per
// (structure function, dx, count).  Negative-definite embeddings return an
// empty vector so the caller can fall back to dense factorization.
std::vector<double> circulant_eigenvalues(const StructureFunction& sigma_sq, double dx,
                                          std::size_t m) {
    static std::mutex cache_mutex;
    static std::map<std::tuple<std::string, double, std::size_t>, std::vector<double>> cache;
    const auto key = std::make_tuple(sigma_sq.describe(), dx, m);
    {
        std::lock_guard lock(cache_mutex);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }

    const std::size_t p = 2 * m - 2;
    std::vector<std::complex<double>> row(p), freq(p);
    for (std::size_t k = 0; k < m; ++k) {
        row[k] = increment_autocovariance(sigma_sq, dx, static_cast<long>(k));
    }
    for (std::size_t k = m; k < p; ++k) row[k] = row[p - k];

    {
        static std::mutex fftw_mutex;  // FFTW planning is not thread safe
        std::lock_guard lock(fftw_mutex);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(p),
                                          reinterpret_cast<fftw_complex*>(row.data()),
                                          reinterpret_cast<fftw_complex*>(freq.data()),
                                          FFTW_FORWARD, FFTW_ESTIMATE);
        fftw_execute(plan);
        fftw_destroy_plan(plan);
    }

    std::vector<double> eig(p);
    double max_eig = 0.0;
    double min_eig = 0.0;
    for (std::size_t k = 0; k < p; ++k) {
        eig[k] = freq[k].real();
        max_eig = std::max(max_eig, eig[k]);
        min_eig = std::min(min_eig, eig[k]);
    }
    if (min_eig < -1e-9 * max_eig) {
        eig.clear();  // not nonnegative definite; caller falls back
    } else {
        for (double& v : eig) v = std::max(v, 0.0);
    }
    std::lock_guard lock(cache_mutex);
    cache.emplace(key, eig);
    return eig;
}

std::vector<double> circulant_increments(const std::vector<double>& eig, std::size_t m,
                                         Rng& rng) {
    const std::size_t p = eig.size();
    std::vector<std::complex<double>> w(p), out(p);
    const double scale = 1.0 / static_cast<double>(p);
    for (std::size_t k = 0; k < p; ++k) {
        const double amp = std::sqrt(eig[k] * scale);
        w[k] = {amp * rng.normal(), amp * rng.normal()};
    }
    {
        static std::mutex fftw_mutex;
        fftw_plan plan;
        {
            std::lock_guard lock(fftw_mutex);
            plan = fftw_plan_dft_1d(static_cast<int>(p),
                                    reinterpret_cast<fftw_complex*>(w.data()),
                                    reinterpret_cast<fftw_complex*>(out.data()),
                                    FFTW_FORWARD, FFTW_ESTIMATE);
        }
        fftw_execute(plan);
        std::lock_guard lock(fftw_mutex);
        fftw_destroy_plan(plan);
    }
    std::vector<double> inc(m);
    for (std::size_t k = 0; k < m; ++k) inc[k] = out[k].real();
    return inc;
}

std::vector<double> dense_increments(const StructureFunction& sigma_sq, double dx,
                                     std::size_t m, Rng& rng) {
    if (m > 4096) {
        throw SimulationError(
            "circulant embedding not nonnegative definite and grid too large for the "
            "dense fallback");
    }
    std::vector<double> cov(m);
    for (std::size_t k = 0; k < m; ++k) {
        cov[k] = increment_autocovariance(sigma_sq, dx, static_cast<long>(k));
    }
    const double jitter = 1e-12 * cov[0];
    // In-place Cholesky of the Toeplitz covariance (row-major lower factor).
    std::vector<double> chol(m * m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = cov[i - j] + (i == j ? jitter : 0.0);
            for (std::size_t k = 0; k < j; ++k) sum -= chol[i * m + k] * chol[j * m + k];
            if (i == j) {
                if (sum <= 0.0) {
                    throw SimulationError("covariance factorization failed after jitter");
                }
                chol[i * m + j] = std::sqrt(sum);
            } else {
                chol[i * m + j] = sum / chol[j * m + j];
            }
        }
    }
    std::vector<double> z(m), inc(m, 0.0);
    for (auto& v : z) v = rng.normal();
    for (std::size_t i = 0; i < m; ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j <= i; ++j) sum += chol[i * m + j] * z[j];
        inc[i] = sum;
    }
    return inc;
}

}  // namespace

GaussianPath simulate_stationary_increment_path(const StructureFunction& sigma_sq,
                                                double a, double b, double dx,
                                                double h_max, std::uint64_t seed) {
    if (!(b > a) || !(dx > 0.0) || h_max < 0.0) {
        throw DomainError("simulate_stationary_increment_path: bad grid");
    }
    const std::size_t n = aligned_index(b + h_max, a, dx, "simulate") + 1;
    if (n < 3) throw DomainError("simulate_stationary_increment_path: grid too small");
    const std::size_t m = n - 1;

    Rng rng(seed);
    std::vector<double> eig = circulant_eigenvalues(sigma_sq, dx, m);
    std::vector<double> inc =
        eig.empty() ? dense_increments(sigma_sq, dx, m, rng)
                    : circulant_increments(eig, m, rng);

    GaussianPath path;
    path.a = a;
    path.b = b;
    path.dx = dx;
    path.h_max = h_max;
    path.values.resize(n);
    path.values[0] = 0.0;
    for (std::size_t i = 0; i < m; ++i) path.values[i + 1] = path.values[i] + inc[i];
    return path;
}

namespace {

template <typename Transform>
double lp_modulus_impl(const GaussianPath& path, double h, double p, double a, double b,
                       const StructureFunction& sigma_sq, Transform&& transform) {
    if (!(h > 0.0)) throw DomainError("lp modulus: h must be positive");
    if (p < 1.0) throw DomainError("lp modulus: p must be >= 1");
    const double ratio = h / path.dx;
    if (std::abs(ratio - std::round(ratio)) > 1e-6 || std::round(ratio) < 1.0) {
        throw AlignmentError("lp modulus: h must be a positive integer multiple of dx");
    }
    const std::size_t k = static_cast<std::size_t>(std::round(ratio));
    const std::size_t first = path.index_of(a);
    const std::size_t last = path.index_of(b);  // exclusive (left-endpoint sum)
    if (last + k >= path.values.size() + 1) {
        throw AlignmentError("lp modulus: window plus h exceeds the simulated grid");
    }
    const double norm = std::pow(sigma_sq.sigma(h), p);
    double sum = 0.0;
    for (std::size_t i = first; i < last; ++i) {
        const double d = transform(path.values[i + k]) - transform(path.values[i]);
        sum += std::pow(std::abs(d), p);
    }
    return path.dx * sum / norm;
}

}  // namespace

double lp_modulus_gaussian(const GaussianPath& path, double h, double p, double a,
                           double b, const StructureFunction& sigma_sq) {
    return lp_modulus_impl(path, h, p, a, b, sigma_sq, [](double v) { return v; });
}

double lp_modulus_squared_gaussian(const GaussianPath& path, double h, double p, double a,
                                   double b, const StructureFunction& sigma_sq) {
    return lp_modulus_impl(path, h, p, a, b, sigma_sq, [](double v) { return v * v; });
}

}  // namespace levymoduli
