#ifndef HEATCONTENT_CONTENT_HPP
#define HEATCONTENT_CONTENT_HPP

#include <cstdint>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "heatcontent/estimate.hpp"
#include "heatcontent/geometry.hpp"

namespace heatcontent::content {

using geometry::Shape;

enum class Spacing { log, linear, explicit_times };

struct TimeGrid {
    std::vector<double> times;
    Spacing spacing = Spacing::explicit_times;

    /// `points` log-spaced times from tmin to tmax inclusive.
    static TimeGrid log(double tmin, double tmax, std::size_t points);
    static TimeGrid linear(double tmin, double tmax, std::size_t points);
    /// Validates positivity and strict increase.
    static TimeGrid explicit_times(std::vector<double> times);
    /// Log grid with the given density (default 24 points per decade).
    static TimeGrid per_decade(double tmin, double tmax, double density = 24.0);
};

std::string_view to_string(Spacing s);

enum class Quantity { H, F };
std::string_view to_string(Quantity q);
Quantity quantity_from_string(std::string_view s);

struct HeatCurve {
    Shape shape;
    TimeGrid grid;
    std::vector<Estimate> values;
    Quantity quantity = Quantity::H;
};

// Closed forms in one dimension.

/// H of the interval (0, L).
double heat_content_interval(double length, double t);
/// F of the interval (0, L): L erfc(L/(2 sqrt t)) + 2 sqrt(t/pi) (1 - exp(-L^2/(4t))).
double heat_loss_interval(double length, double t);

/// Box: H = prod_i H_(0,L_i)(t). Throws HypothesisError for other shapes.
Estimate heat_content_exact_product(const Shape& box, double t);
/// Box: F = |D| (1 - prod_i (1 - F_i / L_i)), evaluated with log1p/expm1.
Estimate heat_loss_exact_product(const Shape& box, double t);

/// Ball: H = ∫ k_t(z) |B ∩ (B + z)| dz as a one-dimensional radial quadrature.
Estimate heat_content_quadrature(const Shape& ball, double t);
/// Ball: F = ∫ k_t(z) (|B| - |B ∩ (B + z)|) dz, free of cancellation.
Estimate heat_loss_quadrature(const Shape& ball, double t);

/// Ball: H = ∫_0^a u_ball(r; t) m omega_m r^(m-1) dr (nested quadrature; oracle path).
Estimate heat_content_radial(const Shape& ball, double t);
/// Ball: F = ∫_0^a (1 - u_ball(r; t)) m omega_m r^(m-1) dr.
Estimate heat_loss_radial(const Shape& ball, double t);

/// |D| times the fraction of x ~ Uniform(D) whose displacement x + sqrt(2t) Z
/// stays in D (H) or leaves it (F). Finite-volume, bounded shapes only.
Estimate heat_content_mc(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed);
Estimate heat_loss_mc(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed);

/// Horn: slices of (1, x_max) estimated by Monte Carlo, plus the tail
/// x_1 > x_max bracketed by [0, c2 t^(-m/2) ∫_tail mu(x; (8mt)^(1/2))].
/// The half-width of that bracket is added to the error radius.
/// Infinite when alpha <= 1/(2(m-1)).
Estimate heat_content_horn(const Shape& horn, double t, double x_max, std::uint64_t samples,
                           std::uint64_t seed);
/// Horn: deterministic evaluation of
///   ∫_{x>1} ∫_{y>1} p_1(x, y; t) K(g(x), g(y); t)^(m-1) dy dx,
/// K the closed-form interval cross content and g the section side.
Estimate heat_content_horn_quadrature(const Shape& horn, double t);

/// Best available H: closed form, quadrature, or Monte Carlo.
Estimate heat_content(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed);
/// Best available F = ∫_D (1 - u_D). Finite volume only.
Estimate heat_loss(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed);

/// F as the cross integral ∫_{R^m - D} ∫_D p, by quadrature of u over the
/// complement of each axis interval. Boxes (intervals included) only.
Estimate heat_loss_preunkert(const Shape& box, double t);

/// ∫_{R^m} u_D(x; t/2)^2 dx for boxes by per-axis quadrature.
Estimate l2_curve(const Shape& box, double t);

enum class CurveMethod { automatic, exact, quadrature, monte_carlo };
std::string_view to_string(CurveMethod m);
CurveMethod curve_method_from_string(std::string_view s);

struct CurveOptions {
    Quantity quantity = Quantity::H;
    CurveMethod method = CurveMethod::automatic;
    std::uint64_t samples = 1u << 20;
    std::uint64_t seed = 1;
    double horn_x_max = 1.0e3;  // Monte Carlo horn path only
};

/// Evaluates every grid point. Point i uses seed derive_seed(seed, i), so
/// the curve is identical regardless of worker count.
HeatCurve compute_curve(const Shape& shape, const TimeGrid& grid, const CurveOptions& opts);

/// Header "t,value,error_radius,method,samples"; numbers in %.17g, "inf" for
/// infinite values.
void write_csv(std::ostream& out, const HeatCurve& curve);
HeatCurve read_csv(std::istream& in, const Shape& shape, Quantity q);

std::string format_number(double v);

}  // namespace heatcontent::content

#endif
