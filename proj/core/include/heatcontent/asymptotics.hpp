#ifndef HEATCONTENT_ASYMPTOTICS_HPP
#define HEATCONTENT_ASYMPTOTICS_HPP

#include <cstdint>
#include <nlohmann/json.hpp>
#include <span>
#include <string_view>
#include <vector>

#include "heatcontent/content.hpp"

namespace heatcontent::asymptotics {

using content::HeatCurve;
using content::TimeGrid;
using geometry::Shape;

enum class Model { sqrt_coeff, h3_coeff, power_exponent };
std::string_view to_string(Model m);

struct Window {
    double t_min = 0.0;
    double t_max = kInf;
};

struct FitResult {
    double coefficient = 0.0;
    double predicted = 0.0;
    double relative_error = 0.0;  // |coefficient - predicted| / |predicted|
    Window window;
    double residual_norm = 0.0;  // Euclidean norm of the regression residuals
    std::size_t points = 0;
    Model model = Model::sqrt_coeff;
};

nlohmann::json to_json(const FitResult& f);

struct Line {
    double intercept = 0.0;
    double slope = 0.0;
    double residual_norm = 0.0;
};

/// Ordinary least squares y = intercept + slope * x (at least two points).
Line least_squares(std::span<const double> x, std::span<const double> y);

/// Regresses (|D| - H)/sqrt t on t inside the window; the intercept is the
/// fitted coefficient, compared with pi^(-1/2) P(D). Needs >= 6 points.
/// Accepts H or F curves (F is used directly when given).
FitResult fit_perimeter_coefficient(const HeatCurve& curve, Window window);

/// Ball only. Regresses (H - |D| + pi^(-1/2) P sqrt t) / t^(3/2) on sqrt t,
/// subtracting the two leading terms with exact |D| and P. The prediction is
///   -P(D) [5 (m-1)^2 / 32 + (m-1)/16] / a^2.
FitResult h3_check_ball(const HeatCurve& curve, Window window);
double h3_predicted_ball(int m, double radius);

/// Slope of log H against log t, compared with ((m-1) alpha - 1)/(2 alpha).
/// Requires 1/(2(m-1)) < alpha < 1/(m-1).
FitResult horn_exponent(const HeatCurve& curve);
FitResult horn_exponent(const Shape& horn, const TimeGrid& grid);
double horn_predicted_exponent(int m, double alpha);

/// ||u_D(.; t) - 1_D||_p^p along the grid: 2 F for p = 1, radial quadrature
/// for balls and Monte Carlo over a padded bounding box for boxes when p > 1.
std::vector<Estimate> lp_convergence_check(const Shape& shape, double p, const TimeGrid& grid,
                                           std::uint64_t samples, std::uint64_t seed);

}  // namespace heatcontent::asymptotics

#endif
