#include <benchmark/benchmark.h>

#include <vector>

#include "heatcontent/content.hpp"
#include "heatcontent/geometry.hpp"
#include "heatcontent/kernel.hpp"

using namespace heatcontent;
using geometry::Shape;

namespace {

const Shape disk = Shape::ball({0.0, 0.0}, 1.0);
const Shape square = Shape::box({1.0, 1.0});
const Shape horn = Shape::horn(2, 0.75);

void BM_UBall(benchmark::State& state) {
    const std::vector<double> x = {0.9, 0.1};
    for (auto _ : state) benchmark::DoNotOptimize(kernel::u_ball(disk, x, 0.01));
}
BENCHMARK(BM_UBall);

void BM_DiskQuadrature(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(content::heat_content_quadrature(disk, 1e-3));
}
BENCHMARK(BM_DiskQuadrature);

void BM_SquareExact(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(content::heat_content_exact_product(square, 0.0025));
}
BENCHMARK(BM_SquareExact);

void BM_SquareMonteCarlo(benchmark::State& state) {
    const auto n = static_cast<std::uint64_t>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(content::heat_content_mc(square, 0.0025, n, 1));
    state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_SquareMonteCarlo)->Arg(1 << 14)->Arg(1 << 18)->Unit(benchmark::kMillisecond);

void BM_HornQuadrature(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(content::heat_content_horn_quadrature(horn, 0.01));
}
BENCHMARK(BM_HornQuadrature)->Unit(benchmark::kMillisecond);

void BM_MuIntegralUnion(benchmark::State& state) {
    const auto two = Shape::disjoint_union({disk, Shape::ball({5.0, 0.0}, 1.0)});
    for (auto _ : state) benchmark::DoNotOptimize(geometry::mu_integral(two, 0.3, 1 << 16, 1));
}
BENCHMARK(BM_MuIntegralUnion)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
