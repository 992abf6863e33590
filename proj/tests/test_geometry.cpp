#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "heatcontent/geometry.hpp"
#include "heatcontent/shape_json.hpp"
#include "oracles.hpp"

using namespace heatcontent;
using namespace heatcontent::geometry;

namespace {
constexpr double pi = std::numbers::pi;
const Shape disk = Shape::ball({0.0, 0.0}, 1.0);
}  // namespace

TEST_CASE("contains") {
    const std::vector<double> o = {0.0, 0.0}, e = {1.0, 0.0}, hp = {2.0, 0.4}, hq = {2.0, 0.6};
    CHECK(contains(disk, o));
    CHECK_FALSE(contains(disk, e));
    const auto horn = Shape::horn(2, 1.0, 1.0);
    CHECK(contains(horn, hp));
    CHECK_FALSE(contains(horn, hq));
}

TEST_CASE("delta") {
    const std::vector<double> o = {0.0, 0.0}, p = {0.6, 0.0}, c = {1.0, 1.0};
    CHECK(delta(disk, o) == doctest::Approx(1.0));
    CHECK(delta(disk, p) == doctest::Approx(0.4));
    CHECK(delta(Shape::box({2.0, 2.0}), c) == doctest::Approx(1.0));
}

TEST_CASE("construction invariants") {
    CHECK_THROWS_AS(Shape::ball({0.0}, -1.0), InvalidInput);
    CHECK_THROWS_AS(Shape::disjoint_union({disk, Shape::ball({1.5, 0.0}, 1.0)}), InvalidInput);
    const auto s = Shape::stadium({0.0, 0.0}, {0.0, 0.0}, 1.0);
    CHECK(s.kind() == Kind::ball);
    CHECK(std::isinf(geo_summary(Shape::horn(2, 0.75)).volume));
    CHECK_FALSE(Shape::horn(2, 0.75).finite_volume());
}

TEST_CASE("mu and nu") {
    const std::vector<double> o = {0.0, 0.0}, e = {1.0, 0.0}, far = {5.0, 0.0};
    CHECK(mu(disk, o, 0.5, 1, 1).value == doctest::Approx(pi * 0.25));
    CHECK(mu(disk, far, 2.0, 1, 1).value == 0.0);
    // half-lens: disk of radius 1 at the origin against B((1,0); 2)
    const auto lens = mu(disk, e, 2.0, 1, 1).value;
    const auto mc = oracle::mc_box(
        [](const std::vector<double>& x) {
            return (x[0] * x[0] + x[1] * x[1] < 1.0 && (x[0] - 1) * (x[0] - 1) + x[1] * x[1] < 4.0) ? 4.0 : 0.0;
        },
        {-1.0, -1.0}, {1.0, 1.0}, 10'000'000, 5);
    CHECK(std::abs(lens - mc.mean) < 3.0 * mc.std_error);
    CHECK(nu(disk, o, 2.0, 1, 1).value == doctest::Approx(4.0 * pi - pi));
    for (double r : {0.3, 1.0, 1.7}) {
        const std::vector<double> x = {0.4, 0.2};
        CHECK(mu(disk, x, r, 1, 1).value + nu(disk, x, r, 1, 1).value == doctest::Approx(pi * r * r));
    }
}

TEST_CASE("mu_integral and nu_integral") {
    CHECK(mu_integral(Shape::horn(2, 0.4), 0.5, 1024, 1).is_infinite());
    CHECK(nu_integral(disk, 3.0, 1024, 1).value == doctest::Approx(8.0 * pi * pi).epsilon(1e-10));
    CHECK_THROWS_AS(mu_integral(disk, 1.0, 0, 1), InvalidInput);

    // square against a grid oracle of the covariogram: int_{|z|<R} (1-|z1|)+(1-|z2|)+ dz
    const auto sq = Shape::box({1.0, 1.0});
    const double R = 0.7;
    const double h = 1e-3;
    double grid = 0.0;
    for (double z1 = -R + h / 2; z1 < R; z1 += h)
        for (double z2 = -R + h / 2; z2 < R; z2 += h)
            if (z1 * z1 + z2 * z2 < R * R) grid += (1 - std::abs(z1)) * (1 - std::abs(z2));
    grid *= h * h;
    CHECK(mu_integral(sq, R, 1024, 1).value == doctest::Approx(grid).epsilon(2e-3));
    // MC path on a union agrees with the sum of exact member integrals
    const auto two = Shape::disjoint_union({disk, Shape::ball({5.0, 0.0}, 1.0)});
    const auto mc = mu_integral(two, 0.8, 1 << 20, 3);
    const double exact = 2.0 * mu_integral(disk, 0.8, 1, 1).value;
    CHECK(std::abs(mc.value - exact) <= mc.error_radius);
}

TEST_CASE("geo_summary") {
    const auto g = geo_summary(disk);
    CHECK(g.volume == doctest::Approx(pi));
    CHECK(g.perimeter == doctest::Approx(2 * pi));
    CHECK(g.smoothness_radius == 1.0);
    CHECK(g.diameter == 2.0);
    const auto s = geo_summary(Shape::stadium({0.0, 0.0}, {3.0, 0.0}, 1.0));
    CHECK(s.volume == doctest::Approx(pi + 6.0));
    CHECK(s.diameter == doctest::Approx(5.0));
    CHECK(geo_summary(Shape::horn(2, 2.0)).volume == doctest::Approx(1.0));
    const auto u = geo_summary(Shape::disjoint_union({disk, Shape::ball({5.0, 0.0}, 1.0)}));
    CHECK(u.volume == doctest::Approx(2 * pi));
    CHECK(u.smoothness_radius == 1.0);
    CHECK(u.component_count == 2);
    const auto close = geo_summary(Shape::disjoint_union({disk, Shape::ball({2.5, 0.0}, 1.0)}));
    CHECK(close.smoothness_radius == doctest::Approx(0.25));
}

TEST_CASE("parallel_perimeter") {
    CHECK(parallel_perimeter(disk, 0.5) == doctest::Approx(pi));
    CHECK(parallel_perimeter(disk, 0.0) == doctest::Approx(2 * pi));
    const auto st = Shape::stadium({0.0, 0.0}, {3.0, 0.0}, 1.0);
    CHECK(parallel_perimeter(st, 0.25) == doctest::Approx(6.0 + 2 * pi * 0.75));
}

TEST_CASE("shape json round trip and diagnostics") {
    const auto two = Shape::disjoint_union({disk, Shape::stadium({4.0, 0.0}, {6.0, 0.0}, 0.5)});
    const auto back = shape_from_json(shape_to_json(two));
    CHECK(shape_to_json(back) == shape_to_json(two));
    CHECK_THROWS_WITH_AS(shape_from_json(nlohmann::json::parse(R"({"kind":"ball","m":2,"center":[0],"radius":1})")),
                         doctest::Contains("expected m = 2"), InvalidInput);
    CHECK_THROWS_AS(shape_from_json(nlohmann::json::parse(R"({"kind":"torus","m":3})")), InvalidInput);
}
