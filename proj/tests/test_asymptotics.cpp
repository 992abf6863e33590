#include <doctest.h>

#include <cmath>
#include <numbers>

#include "heatcontent/asymptotics.hpp"
#include "heatcontent/content.hpp"

using namespace heatcontent;
using namespace heatcontent::asymptotics;
using content::TimeGrid;
using geometry::Shape;

namespace {
constexpr double pi = std::numbers::pi;
const Shape disk = Shape::ball({0.0, 0.0}, 1.0);

content::HeatCurve loss_curve(const Shape& s, double lo, double hi, std::size_t n) {
    content::CurveOptions o;
    o.quantity = content::Quantity::F;
    return content::compute_curve(s, TimeGrid::log(lo, hi, n), o);
}
}  // namespace

TEST_CASE("least squares") {
    const std::vector<double> x = {0, 1, 2, 3}, y = {1, 3, 5, 7};
    const auto l = least_squares(x, y);
    CHECK(l.slope == doctest::Approx(2.0));
    CHECK(l.intercept == doctest::Approx(1.0));
    CHECK(l.residual_norm < 1e-12);
}

TEST_CASE("perimeter coefficient") {
    const auto r = fit_perimeter_coefficient(loss_curve(disk, 1e-5, 1e-3, 25), {1e-5, 1e-3});
    CHECK(r.predicted == doctest::Approx(2.0 * std::sqrt(pi)));
    CHECK(r.relative_error < 0.01);
    const auto big = Shape::ball({0.0, 0.0}, 2.0);
    const auto r2 = fit_perimeter_coefficient(loss_curve(big, 1e-5, 1e-3, 25), {1e-5, 1e-3});
    CHECK(r2.predicted == doctest::Approx(2.0 * r.predicted));
    CHECK(r2.relative_error < 0.01);
    const auto sq = fit_perimeter_coefficient(loss_curve(Shape::box({1.0, 1.0}), 1e-5, 1e-3, 25), {1e-5, 1e-3});
    CHECK(sq.predicted == doctest::Approx(4.0 / std::sqrt(pi)));
    CHECK(sq.relative_error < 0.01);
    CHECK_THROWS_AS(fit_perimeter_coefficient(loss_curve(disk, 1e-5, 1e-3, 25), {1.0, 2.0}), InvalidInput);
}

TEST_CASE("h3 predicted values") {
    CHECK(h3_predicted_ball(2, 1.0) == doctest::Approx(-7.0 * pi / 16.0));
    CHECK(h3_predicted_ball(3, 1.0) == doctest::Approx(-3.0 * pi));
    CHECK(h3_predicted_ball(2, 3.0) == doctest::Approx(h3_predicted_ball(2, 1.0) / 3.0));
    CHECK_THROWS_AS(h3_check_ball(loss_curve(Shape::box({1.0, 1.0}), 1e-5, 1e-3, 8), {1e-5, 1e-3}),
                    HypothesisError);
}

TEST_CASE("horn exponent") {
    CHECK(horn_predicted_exponent(2, 0.75) == doctest::Approx(-1.0 / 6.0));
    CHECK(horn_predicted_exponent(2, 0.6) == doctest::Approx(-1.0 / 3.0));
    CHECK(horn_predicted_exponent(3, 0.3) == doctest::Approx(-2.0 / 3.0));
    CHECK_THROWS_AS(horn_exponent(Shape::horn(2, 0.4), TimeGrid::log(1e-3, 1e-1, 8)), InvalidInput);
    const auto horn = Shape::horn(2, 0.75);
    const double a = content::heat_content(horn, 0.0025, 1, 1).value;
    const double b = content::heat_content(horn, 0.01, 1, 1).value;
    // slope between t and 4t; the approach to -1/6 is slow at scale 1
    const double slope = std::log(b / a) / std::log(4.0);
    CHECK(slope < 0.0);
    CHECK(slope > -0.5);
}

TEST_CASE("Lp convergence") {
    const auto grid = TimeGrid::log(1e-4, 1e-1, 6);
    const auto p1 = lp_convergence_check(disk, 1.0, grid, 1, 1);
    for (std::size_t i = 0; i < grid.times.size(); ++i)
        CHECK(p1[i].value == doctest::Approx(2.0 * content::heat_loss(disk, grid.times[i], 1, 1).value));
    for (double p : {2.0, 3.0}) {
        const auto seq = lp_convergence_check(disk, p, grid, 1, 1);
        for (std::size_t i = 1; i < seq.size(); ++i) CHECK(seq[i].upper() >= seq[i - 1].lower());
        for (const auto& e : seq) CHECK(e.value <= 2.0 * pi);
    }
    const auto box = lp_convergence_check(Shape::box({1.0, 1.0}), 2.0, TimeGrid::log(1e-3, 1e-2, 2), 1 << 18, 1);
    CHECK(box[1].upper() >= box[0].lower());
    CHECK_THROWS_AS(lp_convergence_check(disk, 0.5, grid, 1, 1), InvalidInput);
}
