#include "heatcontent/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "heatcontent/parallel.hpp"

namespace heatcontent {

McSummary mc_mean(std::uint64_t samples, std::uint64_t seed, std::size_t dim, const Draw& draw) {
    if (samples == 0) throw InvalidInput("Monte Carlo budget must be at least one sample");
    const std::uint64_t n = round_up_pow2(samples);
    const std::uint64_t batches = (n + kBatchSize - 1) / kBatchSize;
    struct Partial {
        double sum = 0.0;
        double sum_sq = 0.0;
    };
    std::vector<Partial> partial(batches);
    parallel_for(batches, [&](std::size_t b) {
        Rng rng(derive_seed(seed, b));
        std::vector<double> scratch(std::max<std::size_t>(dim, 1));
        const std::uint64_t count = std::min(kBatchSize, n - b * kBatchSize);
        Partial p;
        for (std::uint64_t i = 0; i < count; ++i) {
            const double v = draw(rng, scratch);
            p.sum += v;
            p.sum_sq += v * v;
        }
        partial[b] = p;
    });
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& p : partial) {
        sum += p.sum;
        sum_sq += p.sum_sq;
    }
    const double nd = static_cast<double>(n);
    const double mean = sum / nd;
    double var = (n > 1) ? std::max(0.0, (sum_sq - nd * mean * mean) / (nd - 1.0)) : 0.0;
    var = std::max(var, 1.0 / nd);
    return {mean, std::sqrt(var / nd), n};
}

}  // namespace heatcontent
