#ifndef HEATCONTENT_QUADRATURE_HPP
#define HEATCONTENT_QUADRATURE_HPP

#include <cstddef>
#include <functional>
#include <span>

#include "heatcontent/estimate.hpp"

namespace heatcontent::quadrature {

struct Options {
    double abs_tol = 1e-12;
    double rel_tol = 0.0;
    std::size_t max_subdivisions = 1'000'000;
};

struct Result {
    double value = 0.0;
    double error = 0.0;  // sum of per-interval Gauss/Kronrod discrepancies
    std::size_t intervals = 0;
    bool converged = true;

    Estimate to_estimate() const { return {value, error, Method::quadrature, 0}; }
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod on [a, b]. The interval with
/// the largest local error is bisected until the summed error meets
/// max(abs_tol, rel_tol*|I|) or the subdivision cap is reached; in the latter
/// case `converged` is false and `error` carries the (wider) remaining bound.
Result integrate(const Integrand& f, double a, double b, const Options& opts = {});

/// Same, seeded with the given breakpoints (sorted, endpoints included) so
/// that sharply localised features are visible to the first pass.
Result integrate(const Integrand& f, std::span<const double> breakpoints,
                 const Options& opts = {});

/// Integral over [a, inf) through x = a + u/(1-u).
Result integrate_to_infinity(const Integrand& f, double a, const Options& opts = {});

/// Integral over [a, inf) through x = a * v^(-q), v in (0, 1]; suited to
/// integrands decaying like x^(-p) with p*q - q - 1 >= 0. Requires a > 0.
Result integrate_power_tail(const Integrand& f, double a, double q, const Options& opts = {});

}  // namespace heatcontent::quadrature

#endif
