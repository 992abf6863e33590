#ifndef HEATCONTENT_RANDOM_HPP
#define HEATCONTENT_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace heatcontent {

/// splitmix64 finaliser; used to derive independent per-task seeds from a
/// single top-level seed.
constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task) {
    return mix64(mix64(seed) ^ mix64(task + 0x632be59bd9b4e019ULL));
}

/// Seeded generator for uniform and Gaussian variates. Owns no global state.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return std::generate_canonical<double, 53>(engine_); }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double normal() { return normal_(engine_); }

    /// Uniform point in the ball B(center; radius) of dimension out.size().
    void in_ball(std::span<const double> center, double radius, std::span<double> out) {
        const std::size_t m = out.size();
        double norm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            out[i] = normal();
            norm2 += out[i] * out[i];
        }
        const double r = radius * std::pow(uniform(), 1.0 / static_cast<double>(m)) / std::sqrt(norm2);
        for (std::size_t i = 0; i < m; ++i) out[i] = center[i] + r * out[i];
    }

   private:
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Smallest power of two >= n (n >= 1).
std::uint64_t round_up_pow2(std::uint64_t n);

}  // namespace heatcontent

#endif
