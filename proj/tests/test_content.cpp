#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "heatcontent/content.hpp"
#include "heatcontent/geometry.hpp"
#include "heatcontent/kernel.hpp"
#include "heatcontent/quadrature.hpp"
#include "oracles.hpp"

using namespace heatcontent;
using namespace heatcontent::content;
using geometry::Shape;

namespace {
constexpr double pi = std::numbers::pi;
const Shape disk = Shape::ball({0.0, 0.0}, 1.0);
const Shape square = Shape::box({1.0, 1.0});
const Shape interval = Shape::box({1.0});
}  // namespace

TEST_CASE("time grids") {
    const auto g = TimeGrid::log(1e-4, 1e-1, 24);
    CHECK(g.times.size() == 24);
    CHECK(g.times.front() == 1e-4);
    CHECK(g.times.back() == 1e-1);
    CHECK(TimeGrid::per_decade(1e-3, 1e-1).times.size() == 49);
    CHECK_THROWS_AS(TimeGrid::explicit_times({0.1, 0.05}), InvalidInput);
    CHECK_THROWS_AS(TimeGrid::log(-1.0, 1.0, 4), InvalidInput);
}

TEST_CASE("box heat content") {
    CHECK(heat_content_exact_product(square, 1e-10).value == doctest::Approx(1.0).epsilon(1e-4));
    const double h1 = heat_content_interval(1.0, 0.0025);
    CHECK(heat_content_exact_product(square, 0.0025).value == doctest::Approx(h1 * h1).epsilon(1e-14));
    CHECK(std::abs(heat_content_interval(1.0, 0.01) - oracle::interval_heat_content(1.0, 0.01, 1e-4)) < 1e-6);
    CHECK(heat_loss_interval(1.0, 0.01) == doctest::Approx(1.0 - heat_content_interval(1.0, 0.01)));
    // interval against the Preunkert cross-integral path
    CHECK(std::abs(heat_loss_preunkert(interval, 0.01).value - heat_loss_exact_product(interval, 0.01).value) < 1e-6);
    CHECK(std::abs(heat_loss_preunkert(square, 0.003).value - heat_loss_exact_product(square, 0.003).value) < 1e-6);
}

TEST_CASE("ball heat content") {
    CHECK(heat_content_quadrature(disk, 1e-3).value + heat_loss_quadrature(disk, 1e-3).value ==
          doctest::Approx(pi).epsilon(1e-14));
    for (double t : {1e-4, 1e-2, 0.5}) {
        CHECK(std::abs(heat_content_quadrature(disk, t).value - heat_content_radial(disk, t).value) < 1e-9);
        CHECK(std::abs(heat_loss_quadrature(disk, t).value - heat_loss_radial(disk, t).value) < 1e-9);
    }
    const double F = heat_loss_quadrature(disk, 1e-4).value;
    CHECK(F == doctest::Approx(2.0 * std::sqrt(pi) * 1e-2).epsilon(0.05));
    const auto big = Shape::ball({0.0, 0.0}, 500.0);
    CHECK(heat_content_quadrature(big, 0.01).value / geometry::geo_summary(big).volume > 0.999);

    // radial oracle built only from the 2-D kernel
    const double t = 0.02;
    const double H = oracle::simpson([&](double r) { return 2 * pi * r * oracle::u_disk(r, t, 400); }, 0.0, 1.0, 400);
    CHECK(std::abs(H - heat_content_quadrature(disk, t).value) < 1e-7);

    const auto ball3 = Shape::ball({0.0, 0.0, 0.0}, 1.0);
    const auto mc3 = heat_content_mc(ball3, 0.01, 1 << 20, 2);
    CHECK(std::abs(mc3.value - heat_content_quadrature(ball3, 0.01).value) <= mc3.error_radius);
}

TEST_CASE("Monte Carlo estimator") {
    const auto mc = heat_content_mc(square, 0.0025, 1'000'000, 11);
    CHECK(mc.samples == 1u << 20);
    CHECK(std::abs(mc.value - heat_content_exact_product(square, 0.0025).value) <= mc.error_radius);
    const auto again = heat_content_mc(square, 0.0025, 1'000'000, 11);
    CHECK(again.value == mc.value);
    CHECK(again.error_radius == mc.error_radius);
    const auto dmc = heat_content_mc(disk, 0.01, 1 << 20, 3);
    CHECK(std::abs(dmc.value - heat_content_quadrature(disk, 0.01).value) <= dmc.error_radius);
    CHECK(heat_content(square, 1e6 * 2.0, 1 << 16, 1).value < 1e-6);
    CHECK_THROWS_AS(heat_content_mc(square, 0.01, 1, 1), InvalidInput);
}

TEST_CASE("horn heat content") {
    CHECK(heat_content(Shape::horn(2, 0.4), 0.01, 1 << 16, 1).is_infinite());
    const auto horn = Shape::horn(2, 0.75);
    const auto q = heat_content_horn_quadrature(horn, 0.01);
    const auto mc = heat_content_horn(horn, 0.01, 1e3, 1 << 20, 1);
    CHECK(std::abs(q.value - mc.value) <= mc.error_radius + q.error_radius);
    // doubling the cut shrinks the tail bracket by about 2^(1 - 2 beta)
    const auto& h = std::get<geometry::Horn>(horn.variant());
    const double r = geometry::horn_mu_tail_bound(h, 0.4, 2000.0) / geometry::horn_mu_tail_bound(h, 0.4, 1000.0);
    CHECK(r == doctest::Approx(std::pow(2.0, 1.0 - 2.0 * h.exponent())).epsilon(0.02));
}

TEST_CASE("heat loss") {
    for (double t : {1e-3, 1e-2}) {
        CHECK(heat_loss(disk, t, 1, 1).value == doctest::Approx(pi - heat_content(disk, t, 1, 1).value));
        CHECK(heat_loss(square, t, 1, 1).value < 4.0 * std::sqrt(t / pi) + 1e-12);
    }
    CHECK(heat_loss(disk, 1e-12, 1, 1).value < 1e-5);
    CHECK_THROWS_AS(heat_loss(Shape::horn(2, 0.75), 0.01, 1, 1), HypothesisError);
    const auto two = Shape::disjoint_union({disk, Shape::ball({5.0, 0.0}, 1.0)});
    const auto F2 = heat_loss(two, 0.01, 1 << 18, 1);
    CHECK(std::abs(F2.value - 2 * heat_loss(disk, 0.01, 1, 1).value) <= F2.error_radius + 1e-9);
}

TEST_CASE("L2 curve identity") {
    for (double t : {1e-3, 1e-2, 0.1}) {
        CHECK(std::abs(l2_curve(interval, t).value - heat_content_interval(1.0, t)) < 1e-8);
        CHECK(std::abs(l2_curve(square, t).value - heat_content_exact_product(square, t).value) < 1e-8);
    }
}

TEST_CASE("curves and CSV") {
    CurveOptions opts;
    const auto c = compute_curve(disk, TimeGrid::log(1e-4, 1e-1, 24), opts);
    CHECK(c.values.size() == 24);
    opts.method = CurveMethod::exact;
    CHECK_THROWS_AS(compute_curve(disk, TimeGrid::log(1e-4, 1e-1, 4), opts), HypothesisError);

    std::ostringstream out;
    write_csv(out, c);
    const std::string text = out.str();
    CHECK(text.rfind("t,value,error_radius,method,samples\n", 0) == 0);
    std::istringstream in(text);
    const auto back = read_csv(in, disk, Quantity::H);
    for (std::size_t i = 0; i < c.values.size(); ++i) CHECK(back.values[i].value == c.values[i].value);
    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(kInf) == "inf");
}

TEST_CASE("CSV rows carry full precision") {
    CurveOptions opts;
    opts.method = CurveMethod::exact;
    const auto c = compute_curve(interval, TimeGrid::explicit_times({0.01, 0.04}), opts);
    std::ostringstream out;
    write_csv(out, c);
    std::istringstream lines(out.str());
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header == "t,value,error_radius,method,samples");
    CHECK(row.rfind("0.01,", 0) == 0);
    CHECK(row.substr(row.size() - 14) == ",closed_form,0");
    const std::string value = row.substr(5, row.find(',', 5) - 5);
    CHECK(value.size() >= 18);
    const double expect = 1.0 - 2.0 * std::sqrt(0.01 / pi) * (1 - std::exp(-25.0)) - std::erfc(5.0);
    CHECK(std::abs(std::stod(value) - expect) < 4e-16);
}
