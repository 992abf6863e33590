#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "heatcontent/bounds.hpp"
#include "heatcontent/content.hpp"
#include "heatcontent/geometry.hpp"

using namespace heatcontent;
using namespace heatcontent::bounds;
using geometry::Shape;

namespace {
constexpr double pi = std::numbers::pi;
const Shape disk = Shape::ball({0.0, 0.0}, 1.0);
const Shape square = Shape::box({1.0, 1.0});
const Shape two = Shape::disjoint_union({disk, Shape::ball({5.0, 0.0}, 1.0)});
const Shape stadium = Shape::stadium({0.0, 0.0}, {3.0, 0.0}, 1.0);
constexpr std::uint64_t kN = 1 << 18;
}  // namespace

TEST_CASE("constants") {
    const auto c = Constants::for_dimension(2);
    CHECK(c.c1 > 0.0);
    CHECK(c.c2 > c.c1);
    CHECK(c.d1 > 0.0);
    CHECK(c.d2 > c.d1);
    CHECK_THROWS_AS(Constants::for_dimension(0), InvalidInput);
}

TEST_CASE("main theorem") {
    for (double t : {1e-4, 1e-3, 1e-2, 1e-1}) {
        const auto r = verify_main_theorem(disk, t, kN, 1);
        CHECK(r.pass);
        CHECK(r.upper == doctest::Approx(128.0 * pi * t));
    }
    CHECK(verify_main_theorem(two, 0.01, kN, 1).pass);
    CHECK_THROWS_AS(verify_main_theorem(square, 0.01, kN, 1), HypothesisError);
}

TEST_CASE("mu sandwich") {
    CHECK(verify_mu_sandwich(disk, 0.01, kN, 1).pass);
    CHECK(verify_mu_sandwich(Shape::horn(2, 0.75), 0.005, kN, 1).pass);
    const auto inf = verify_mu_sandwich(Shape::horn(2, 0.4), 0.01, kN, 1);
    CHECK(inf.pass);
    CHECK(inf.measured.is_infinite());
    CHECK(std::isinf(inf.lower));
    CHECK(std::isinf(inf.upper));
}

TEST_CASE("time scaling") {
    const auto same = verify_time_scaling(disk, 0.01, 0.01, kN, 1);
    CHECK(same.pass);
    CHECK(same.slack_upper > 0.0);
    CHECK(verify_time_scaling(disk, 0.001, 0.01, kN, 1).pass);
    CHECK(verify_time_scaling(Shape::horn(2, 0.75), 0.01, 0.04, kN, 1).pass);
}

TEST_CASE("trivial and nu bounds") {
    const auto r = verify_trivial_bounds(disk, 1e-3, kN, 1);
    CHECK(r.pass);
    CHECK(r.slack_lower > 0.0);
    CHECK(verify_trivial_bounds(disk, 1e4, kN, 1).lower < 0.0);
    for (double t : {1e-3, 1e-2}) CHECK(verify_nu_sandwich(disk, t, kN, 1).pass);
    CHECK(verify_nu_sandwich(square, 0.0025, kN, 1).pass);
    CHECK(verify_nu_sandwich(two, 0.01, kN, 1).pass);
}

TEST_CASE("subadditivity") {
    const auto interval = Shape::box({1.0});
    for (double t : {1e-3, 1e-2, 0.1}) {
        const double F2 = content::heat_loss(interval, 2 * t, 1, 1).value;
        CHECK(F2 <= 2.0 * content::heat_loss(interval, t, 1, 1).value);
    }
    CHECK(verify_subadditivity(disk, 1e-3, 0.05, kN, 1).pass);
    const auto tiny = verify_subadditivity(disk, 1e-12, 0.05, kN, 1);
    CHECK(tiny.pass);
    CHECK(tiny.slack_upper < 1e-5);
}

TEST_CASE("geometric propositions") {
    const auto rs = verify_geometric_props(stadium);
    CHECK(rs.size() == 23);
    for (const auto& r : rs) CHECK_MESSAGE(r.pass, r.name);
    const auto diam = std::find_if(rs.begin(), rs.end(), [](const auto& r) { return r.name == "diameter_bound"; });
    REQUIRE(diam != rs.end());
    CHECK(std::abs(diam->upper - diam->measured.value) <= 1e-12 * diam->upper);
    const auto dr = verify_geometric_props(disk);
    const auto per = std::find_if(dr.begin(), dr.end(), [](const auto& r) { return r.name == "perimeter_bound"; });
    REQUIRE(per != dr.end());
    CHECK(per->measured.value == doctest::Approx(per->upper).epsilon(1e-14));
    for (const auto& r : verify_geometric_props(two)) CHECK_MESSAGE(r.pass, r.name);
}

TEST_CASE("pointwise lemmas report") {
    const auto rs = verify_pointwise_lemmas(disk, 1e-2, 50, 3);
    CHECK(rs.size() == 50);
    for (const auto& r : rs) CHECK(r.pass);
}

TEST_CASE("report serialization") {
    auto r = verify_mu_sandwich(Shape::horn(2, 0.4), 0.01, kN, 1);
    const auto back = report_from_json(to_json(r));
    CHECK(back.measured.is_infinite());
    CHECK(back.pass == r.pass);
    CHECK(to_json(back) == to_json(r));
    std::vector<BoundReport> v = {verify_main_theorem(disk, 0.1, kN, 1), verify_main_theorem(disk, 0.001, kN, 1)};
    canonical_order(v);
    CHECK(v.front().t < v.back().t);
    std::ostringstream out;
    write_jsonl(out, v);
    const std::string text = out.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 2);
}
