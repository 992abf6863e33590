#ifndef HEATCONTENT_KERNEL_HPP
#define HEATCONTENT_KERNEL_HPP

#include <cstdint>
#include <span>

#include "heatcontent/estimate.hpp"
#include "heatcontent/geometry.hpp"

namespace heatcontent::kernel {

using geometry::Point;
using geometry::Shape;

struct KernelQuery {
    Point x;
    Point y;
    double t = 1.0;  // unit diffusivity: variance 2t per coordinate
};

/// p(x,y;t) = (4 pi t)^(-m/2) exp(-|x-y|^2 / (4t)).
double heat_kernel(const KernelQuery& q);
double heat_kernel(std::span<const double> x, std::span<const double> y, double t);
/// One-dimensional kernel as a function of the displacement.
double heat_kernel_1d(double displacement, double t);

/// Temperature at x of the interval (a, b): Gaussian mass of (a, b).
double u_interval(double a, double b, double x, double t);
/// 1 - u_interval for a < x < b, evaluated through erfc.
double u_interval_deficit(double a, double b, double x, double t);
/// ∫_0^a ∫_0^b p_1(x, y; t) dy dx, closed form.
double interval_cross_content(double a, double b, double t);

/// u_D(x;t) for a Box: product of per-axis interval values.
Estimate u_box(const Shape& box, std::span<const double> x, double t);
/// u_D(x;t) for a Ball: one-dimensional quadrature along the axis through
/// x and the center, the transverse Gaussian mass of each slab being a
/// regularised incomplete gamma value. Certified to 1e-12 absolute.
Estimate u_ball(const Shape& ball, std::span<const double> x, double t);
/// u_D(x;t) for a Horn: quadrature over x_1 of the product of transverse
/// interval values.
Estimate u_horn(const Shape& horn, std::span<const double> x, double t);
/// Monte Carlo: mean of indicator(x + sqrt(2t) Z in D), 3-sigma radius.
Estimate u_general(const Shape& shape, std::span<const double> x, double t, std::uint64_t samples,
                   std::uint64_t seed);
/// Best available path: closed form, quadrature, or Monte Carlo.
Estimate u(const Shape& shape, std::span<const double> x, double t, std::uint64_t samples, std::uint64_t seed);

/// (4 pi t)^(-1/2) ∫_delta^inf exp(-z^2/(4t)) dz = erfc(delta / (2 sqrt t)) / 2.
double boundary_tail(double delta, double t);

/// ∫_{|w| > eta} exp(-|w|^2/(4t)) dw over R^k, via the regularised upper
/// incomplete gamma function.
double exterior_gaussian_mass(int k, double eta, double t);

/// Explicit pointwise lower / upper bounds on u_D(x;t) for R-smooth shapes
/// at points with delta(x) < R/2, R the analytic smoothness radius.
/// Throws HypothesisError when the shape is not R-smooth or delta(x) >= R/2.
double u_lower_lemma(const Shape& shape, std::span<const double> x, double t);
double u_upper_lemma(const Shape& shape, std::span<const double> x, double t);

}  // namespace heatcontent::kernel

#endif
