#ifndef HEATCONTENT_MONTE_CARLO_HPP
#define HEATCONTENT_MONTE_CARLO_HPP

#include <cstdint>
#include <functional>
#include <span>

#include "heatcontent/estimate.hpp"
#include "heatcontent/random.hpp"

namespace heatcontent {

inline constexpr double kSigmaMultiplier = 3.0;
inline constexpr std::uint64_t kBatchSize = 1u << 14;

struct McSummary {
    double mean = 0.0;
    double std_error = 0.0;  // one sample standard error of the mean
    std::uint64_t samples = 0;

    /// scale * mean with a 3-sigma radius.
    Estimate to_estimate(double scale) const {
        return {scale * mean, kSigmaMultiplier * std::abs(scale) * std_error, Method::monte_carlo, samples};
    }
};

/// One Monte Carlo draw: fills nothing in particular, returns the sample value.
/// `scratch` has the requested dimension and may be used freely.
using Draw = std::function<double(Rng&, std::span<double> scratch)>;

/// Mean of `samples` draws (rounded up to a power of two). Draws are split in
/// fixed batches seeded by derive_seed(seed, batch), evaluated in parallel
/// and reduced in batch order, so the result is bit-identical per seed.
/// The variance estimate is floored at 1/N^2 so that all-zero or all-one
/// indicator runs still report a nonzero radius.
McSummary mc_mean(std::uint64_t samples, std::uint64_t seed, std::size_t dim, const Draw& draw);

}  // namespace heatcontent

#endif
