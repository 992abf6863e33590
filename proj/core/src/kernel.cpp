#include "heatcontent/kernel.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <vector>

#include "heatcontent/monte_carlo.hpp"
#include "heatcontent/quadrature.hpp"

namespace heatcontent::kernel {

namespace {

constexpr double kPi = std::numbers::pi;
// Gaussian factor exp(-w^2/(4t)) is below 1e-300 once |w| > kWindow sqrt(t).
constexpr double kWindow = 54.0;

void require_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("time must be positive and finite");
}

void require_dim(const Shape& s, std::span<const double> x) {
    if (static_cast<int>(x.size()) != s.dimension()) throw InvalidInput("point dimension differs from shape");
}

// Breakpoints around a Gaussian peak at `center` clipped to [lo, hi].
std::vector<double> peak_breakpoints(double lo, double hi, double center, double t) {
    std::vector<double> pts = {lo, hi};
    const double s = std::sqrt(t);
    for (double k : {0.0, 1.0, 3.0, 8.0, 20.0}) {
        for (double sign : {-1.0, 1.0}) {
            const double p = center + sign * k * s;
            if (p > lo && p < hi) pts.push_back(p);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

double norm_dist(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace

double heat_kernel(std::span<const double> x, std::span<const double> y, double t) {
    require_time(t);
    if (x.size() != y.size()) throw InvalidInput("kernel arguments differ in dimension");
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) d2 += (x[i] - y[i]) * (x[i] - y[i]);
    return std::pow(4.0 * kPi * t, -0.5 * static_cast<double>(x.size())) * std::exp(-d2 / (4.0 * t));
}

double heat_kernel(const KernelQuery& q) { return heat_kernel(q.x, q.y, q.t); }

double heat_kernel_1d(double displacement, double t) {
    return std::exp(-displacement * displacement / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}

double u_interval(double a, double b, double x, double t) {
    if (!(a < b)) throw InvalidInput("interval needs a < b");
    require_time(t);
    const double s = 2.0 * std::sqrt(t);
    // Evaluate on the side that avoids cancellation of two erf values near 1.
    if (x > a && x < b) return 1.0 - u_interval_deficit(a, b, x, t);
    if (x <= a) return 0.5 * (std::erfc((a - x) / s) - std::erfc((b - x) / s));
    return 0.5 * (std::erfc((x - b) / s) - std::erfc((x - a) / s));
}

double u_interval_deficit(double a, double b, double x, double t) {
    const double s = 2.0 * std::sqrt(t);
    return 0.5 * (std::erfc((b - x) / s) + std::erfc((x - a) / s));
}

double interval_cross_content(double a, double b, double t) {
    // With K2 the even second antiderivative of the 1-D kernel the double
    // integral is K2(a) + K2(b) - K2(a-b). Writing K2(w) = |w|/2 - tail(w)
    // keeps the result free of cancellation.
    if (!(a >= 0.0 && b >= 0.0)) throw InvalidInput("interval lengths must be non-negative");
    const double st = std::sqrt(t);
    auto tail = [&](double w) {
        return 0.5 * (w * std::erfc(w / (2.0 * st)) - 2.0 * st / std::sqrt(kPi) * std::expm1(-w * w / (4.0 * t)));
    };
    const double lo = std::min(a, b);
    const double hi = std::max(a, b);
    return lo - (tail(lo) + tail(hi) - tail(hi - lo));
}

Estimate u_box(const Shape& shape, std::span<const double> x, double t) {
    const auto* box = shape.get_if<geometry::Box>();
    if (!box) throw HypothesisError("u_box needs a box");
    require_dim(shape, x);
    require_time(t);
    double v = 1.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        v *= u_interval(box->corner[i], box->corner[i] + box->lengths[i], x[i], t);
    return {v, 1e-15 * v, Method::closed_form, 0};
}

Estimate u_ball(const Shape& shape, std::span<const double> x, double t) {
    const auto* ball = shape.get_if<geometry::Ball>();
    if (!ball) throw HypothesisError("u_ball needs a ball");
    require_dim(shape, x);
    require_time(t);
    const int m = shape.dimension();
    const double a = ball->radius;
    const double r = norm_dist(x, ball->center);
    if (m == 1) return {u_interval(-a, a, r, t), 0.0, Method::closed_form, 0};
    const double lo = std::max(-a, r - kWindow * std::sqrt(t));
    const double hi = std::min(a, r + kWindow * std::sqrt(t));
    if (!(hi > lo)) return {0.0, 0.0, Method::quadrature, 0};
    const double nu = 0.5 * (m - 1);
    auto f = [&](double y) {
        const double z = (a * a - y * y) / (4.0 * t);
        if (z <= 0.0) return 0.0;
        return heat_kernel_1d(y - r, t) * boost::math::gamma_p(nu, z);
    };
    quadrature::Options opts;
    opts.abs_tol = 1e-13;
    const auto res = quadrature::integrate(f, peak_breakpoints(lo, hi, r, t), opts);
    return {std::clamp(res.value, 0.0, 1.0), res.error, Method::quadrature, 0};
}

Estimate u_horn(const Shape& shape, std::span<const double> x, double t) {
    const auto* horn = shape.get_if<geometry::Horn>();
    if (!horn) throw HypothesisError("u_horn needs a horn");
    require_dim(shape, x);
    require_time(t);
    const double lo = std::max(1.0, x[0] - kWindow * std::sqrt(t));
    const double hi = std::max(lo, x[0] + kWindow * std::sqrt(t));
    if (!(hi > lo)) return {0.0, 0.0, Method::quadrature, 0};
    auto f = [&](double y1) {
        const double side = horn->profile(y1);
        double v = heat_kernel_1d(y1 - x[0], t);
        for (std::size_t j = 1; j < x.size(); ++j) v *= u_interval(0.0, side, x[j], t);
        return v;
    };
    quadrature::Options opts;
    opts.abs_tol = 1e-13;
    const auto res = quadrature::integrate(f, peak_breakpoints(lo, hi, x[0], t), opts);
    return {std::clamp(res.value, 0.0, 1.0), res.error, Method::quadrature, 0};
}

Estimate u_general(const Shape& shape, std::span<const double> x, double t, std::uint64_t samples,
                   std::uint64_t seed) {
    require_dim(shape, x);
    require_time(t);
    if (samples == 0) throw InvalidInput("Monte Carlo path needs a positive sample budget");
    const double sigma = std::sqrt(2.0 * t);
    const auto summary = mc_mean(samples, seed, x.size(), [&](Rng& rng, std::span<double> y) {
        for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + sigma * rng.normal();
        return geometry::contains(shape, y) ? 1.0 : 0.0;
    });
    return summary.to_estimate(1.0);
}

Estimate u(const Shape& shape, std::span<const double> x, double t, std::uint64_t samples, std::uint64_t seed) {
    switch (shape.kind()) {
        case geometry::Kind::ball:
            return u_ball(shape, x, t);
        case geometry::Kind::box:
            return u_box(shape, x, t);
        case geometry::Kind::horn:
            return u_horn(shape, x, t);
        case geometry::Kind::disjoint_union: {
            // Members are disjoint, so the Gaussian mass of D splits over them.
            const auto& members = shape.get_if<geometry::DisjointUnion>()->members;
            Estimate total = Estimate::exact(0.0);
            for (std::size_t i = 0; i < members.size(); ++i)
                total = combine(1.0, total, 1.0, u(members[i], x, t, samples, derive_seed(seed, i)));
            return total;
        }
        case geometry::Kind::stadium:
            break;
    }
    return u_general(shape, x, t, samples, seed);
}

double boundary_tail(double delta, double t) { return 0.5 * std::erfc(delta / (2.0 * std::sqrt(t))); }

double exterior_gaussian_mass(int k, double eta, double t) {
    if (k < 1) throw InvalidInput("exterior Gaussian mass needs k >= 1");
    const double z = std::max(0.0, eta) * std::max(0.0, eta) / (4.0 * t);
    return std::pow(4.0 * kPi * t, 0.5 * k) * boost::math::gamma_q(0.5 * k, z);
}

namespace {

struct LemmaInputs {
    double R;
    double delta;
    int m;
};

LemmaInputs lemma_inputs(const Shape& shape, std::span<const double> x, double t) {
    require_time(t);
    const auto g = geometry::geo_summary(shape);
    if (!(g.smoothness_radius > 0.0)) throw HypothesisError("pointwise bounds need an R-smooth shape");
    const double d = geometry::delta(shape, x);
    if (!(d > 0.0)) throw HypothesisError("pointwise bounds need x inside the shape");
    if (!(d < 0.5 * g.smoothness_radius)) throw HypothesisError("pointwise bounds need delta(x) < R/2");
    return {g.smoothness_radius, d, shape.dimension()};
}

// (4 pi t)^(-1/2) ∫_lo^hi exp(-z^2/(4t)) Q((m-1)/2, eta(z)^2/(4t)) dz.
double lemma_correction(double lo, double hi, double t, int m, const std::function<double(double)>& eta_sq) {
    const double nu = 0.5 * (m - 1);
    auto f = [&](double z) {
        return heat_kernel_1d(z, t) * boost::math::gamma_q(nu, std::max(0.0, eta_sq(z)) / (4.0 * t));
    };
    quadrature::Options opts;
    opts.abs_tol = 1e-14;
    const double l = std::max(lo, -kWindow * std::sqrt(t));
    const double h = std::min(hi, kWindow * std::sqrt(t));
    if (!(h > l)) return 0.0;
    return quadrature::integrate(f, peak_breakpoints(l, h, 0.0, t), opts).value;
}

}  // namespace

double u_lower_lemma(const Shape& shape, std::span<const double> x, double t) {
    const auto in = lemma_inputs(shape, x, t);
    const double corr = lemma_correction(-in.R, in.delta, t, in.m,
                                         [&](double z) { return (in.delta - z) * in.R / 2.0; });
    return 1.0 - boundary_tail(in.delta, t) - std::sqrt(2.0) / 2.0 * std::exp(-in.R * in.R / (8.0 * t)) - corr;
}

double u_upper_lemma(const Shape& shape, std::span<const double> x, double t) {
    const auto in = lemma_inputs(shape, x, t);
    const double corr = lemma_correction(in.delta, in.delta + in.R, t, in.m,
                                         [&](double z) { return (z - in.delta) * in.R; });
    return 1.0 - boundary_tail(in.delta, t) + std::sqrt(2.0) / 2.0 * std::exp(-in.R * in.R / (8.0 * t)) + corr;
}

}  // namespace heatcontent::kernel
