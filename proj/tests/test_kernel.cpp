#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "heatcontent/geometry.hpp"
#include "heatcontent/kernel.hpp"
#include "heatcontent/quadrature.hpp"
#include "oracles.hpp"

using namespace heatcontent;
using namespace heatcontent::kernel;
using geometry::Shape;

namespace {
constexpr double pi = std::numbers::pi;
const Shape disk = Shape::ball({0.0, 0.0}, 1.0);
}  // namespace

TEST_CASE("heat kernel") {
    const std::vector<double> x = {0.3, -0.2};
    CHECK(heat_kernel(x, x, 1.0 / (4.0 * pi)) == doctest::Approx(1.0));
    double prev = heat_kernel_1d(0.0, 0.1);
    for (double d = 0.5; d < 20.0; d += 0.5) {
        const double v = heat_kernel_1d(d, 0.1);
        CHECK(v <= prev);
        if (prev > 0.0) CHECK(v < prev);
        prev = v;
    }
    CHECK(prev < 1e-300);
}

TEST_CASE("semigroup property in one dimension") {
    const double t = 0.05;
    for (double d : {0.0, 0.3, 1.1}) {
        const double conv = oracle::simpson(
            [&](double z) { return oracle::gauss1d(z, t / 2) * oracle::gauss1d(d - z, t / 2); }, -5.0, 5.0, 20000);
        CHECK(std::abs(conv - heat_kernel_1d(d, t)) < 1e-8);
    }
}

TEST_CASE("u on an interval") {
    CHECK(u_interval(0.0, 1.0, 0.5, 1e-6) == doctest::Approx(1.0));
    for (double t : {1e-4, 1e-2, 1.0})
        CHECK(u_interval(0.0, 1.0, 0.0, t) == doctest::Approx(0.5 * std::erf(1.0 / (2.0 * std::sqrt(t)))));
    CHECK(std::abs(u_interval(0.0, 1.0, 0.5, 0.01) - oracle::u_interval(0.0, 1.0, 0.5, 0.01)) < 1e-9);
    CHECK(std::abs(u_interval(0.0, 1.0, 0.93, 0.003) - oracle::u_interval(0.0, 1.0, 0.93, 0.003)) < 1e-9);
    CHECK(u_interval_deficit(0.0, 1.0, 0.5, 0.01) == doctest::Approx(1.0 - u_interval(0.0, 1.0, 0.5, 0.01)));
}

TEST_CASE("interval cross content matches a Riemann double integral") {
    for (double t : {1e-3, 1e-2}) {
        CHECK(std::abs(interval_cross_content(1.0, 1.0, t) - oracle::interval_heat_content(1.0, t, 1e-4)) < 1e-6);
    }
    CHECK_THROWS_AS(interval_cross_content(-1.0, 1.0, 0.1), InvalidInput);
}

TEST_CASE("u on shapes") {
    const auto sq = Shape::box({1.0, 1.0});
    const std::vector<double> c = {0.5, 0.5};
    CHECK(u_box(sq, c, 0.01).value == doctest::Approx(std::pow(u_interval(0.0, 1.0, 0.5, 0.01), 2)));

    const std::vector<double> o = {0.0, 0.0};
    const double ub = u_ball(disk, o, 0.1).value;
    CHECK(ub == doctest::Approx(1.0 - std::exp(-1.0 / 0.4)).epsilon(1e-10));
    const auto mc = u_general(disk, o, 0.1, 10'000'000, 4);
    CHECK(std::abs(mc.value - ub) <= mc.error_radius);

    for (double r : {0.2, 0.7, 0.95, 1.2}) {
        const std::vector<double> x = {r, 0.0};
        CHECK(std::abs(u_ball(disk, x, 0.02).value - oracle::u_disk(r, 0.02)) < 1e-8);
    }

    const auto horn = Shape::horn(2, 0.75);
    const std::vector<double> hx = {3.0, 0.2};
    const double uh = u_horn(horn, hx, 0.01).value;
    const auto hmc = u_general(horn, hx, 0.01, 1 << 20, 6);
    CHECK(std::abs(uh - hmc.value) <= hmc.error_radius);

    for (const auto& s : {disk, sq, horn, Shape::stadium({0.0, 0.0}, {3.0, 0.0}, 1.0)}) {
        const std::vector<double> x = {0.9, 0.1};
        const double v = u(s, x, 0.05, 1 << 16, 1).value;
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("boundary tail identity") {
    for (double d : {0.05, 0.2}) {
        const double t = 0.01;
        const auto q = quadrature::integrate_to_infinity([&](double z) { return oracle::gauss1d(z, t); }, d);
        CHECK(boundary_tail(d, t) == doctest::Approx(q.value).epsilon(1e-10));
        CHECK(boundary_tail(d, t) == doctest::Approx(0.5 * std::erfc(d / (2 * std::sqrt(t)))));
    }
}

TEST_CASE("pointwise lemma sandwich") {
    for (double t : {1e-3, 1e-2, 1e-1}) {
        for (double d : {0.05, 0.15, 0.3, 0.45}) {
            const std::vector<double> x = {1.0 - d, 0.0};
            const double v = u_ball(disk, x, t).value;
            CHECK(u_lower_lemma(disk, x, t) <= v);
            CHECK(v <= u_upper_lemma(disk, x, t));
        }
    }
    const std::vector<double> x = {0.8, 0.0};
    CHECK(u_lower_lemma(disk, x, 1e-7) == doctest::Approx(1.0).epsilon(1e-9));
    const std::vector<double> deep = {0.1, 0.0};
    CHECK_THROWS_AS(u_lower_lemma(disk, deep, 0.01), HypothesisError);
    CHECK_THROWS_AS(u_lower_lemma(Shape::box({1.0, 1.0}), x, 0.01), HypothesisError);
}
