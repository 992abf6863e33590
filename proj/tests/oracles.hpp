#ifndef HEATCONTENT_TESTS_ORACLES_HPP
#define HEATCONTENT_TESTS_ORACLES_HPP

// Brute-force reference computations. Nothing here calls into the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

inline double gauss1d(double d, double t) { return std::exp(-d * d / (4.0 * t)) / std::sqrt(4.0 * pi * t); }

// Midpoint rule on [a, b] with n cells.
inline double midpoint(const std::function<double(double)>& f, double a, double b, std::size_t n) {
    const double h = (b - a) / static_cast<double>(n);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += f(a + (static_cast<double>(i) + 0.5) * h);
    return s * h;
}

// Composite Simpson on [a, b], n even.
inline double simpson(const std::function<double(double)>& f, double a, double b, std::size_t n) {
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double s = f(a) + f(b);
    for (std::size_t i = 1; i < n; ++i) s += f(a + static_cast<double>(i) * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// u for (a, b) at x by a Riemann sum of the 1-D kernel.
inline double u_interval(double a, double b, double x, double t, double step = 1e-5) {
    const auto n = static_cast<std::size_t>(std::ceil((b - a) / step));
    return midpoint([&](double y) { return gauss1d(x - y, t); }, a, b, n);
}

// H_(0,L)(t) by the 2-D double-integral Riemann sum, reduced to the difference
// variable: the integrand depends on x - y only, so the grid sum collapses to
// sum_k (L - |k h|) p(k h) h with the diagonal counted once. Step h per axis.
inline double interval_heat_content(double L, double t, double h) {
    const auto n = static_cast<long>(std::llround(L / h));
    double s = L * gauss1d(0.0, t);
    for (long k = 1; k < n; ++k) {
        const double d = static_cast<double>(k) * h;
        s += 2.0 * (L - d) * gauss1d(d, t);
    }
    return s * h;
}

// Unit-disk u at radius r by polar Simpson integration of the 2-D kernel.
inline double u_disk(double r, double t, std::size_t n = 2000) {
    auto inner = [&](double rho) {
        // angular integral of exp(-(r^2 + rho^2 - 2 r rho cos th)/4t) over [0, 2 pi]
        const double z = r * rho / (2.0 * t);
        const double base = -(r - rho) * (r - rho) / (4.0 * t);
        auto g = [&](double th) { return std::exp(base + z * (std::cos(th) - 1.0)); };
        return rho * simpson(g, 0.0, 2.0 * pi, 2 * n);
    };
    return simpson(inner, 0.0, 1.0, n) / (4.0 * pi * t);
}

// Plain Monte Carlo mean of f over n draws of a uniform point in [lo, hi]^dim.
struct McResult {
    double mean;
    double std_error;
};

inline McResult mc_box(const std::function<double(const std::vector<double>&)>& f, const std::vector<double>& lo,
                       const std::vector<double>& hi, std::size_t n, std::uint64_t seed) {
    std::mt19937_64 eng(seed);
    std::uniform_real_distribution<double> U(0.0, 1.0);
    std::vector<double> x(lo.size());
    double s = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = lo[j] + (hi[j] - lo[j]) * U(eng);
        const double v = f(x);
        s += v;
        s2 += v * v;
    }
    const double mean = s / static_cast<double>(n);
    const double var = std::max(0.0, s2 / static_cast<double>(n) - mean * mean);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace oracle

#endif
