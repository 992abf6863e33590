#include "heatcontent/content.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "heatcontent/bounds.hpp"
#include "heatcontent/kernel.hpp"
#include "heatcontent/monte_carlo.hpp"
#include "heatcontent/parallel.hpp"
#include "heatcontent/quadrature.hpp"

namespace heatcontent::content {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWindow = 54.0;

using geometry::Ball;
using geometry::Box;
using geometry::Horn;

void require_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("time must be positive and finite");
}

const Ball& as_ball(const Shape& s) {
    const auto* b = s.get_if<Ball>();
    if (!b) throw HypothesisError("this path needs a ball");
    return *b;
}

const Box& as_box(const Shape& s) {
    const auto* b = s.get_if<Box>();
    if (!b) throw HypothesisError("the exact product path needs a box");
    return *b;
}

const Horn& as_horn(const Shape& s) {
    const auto* h = s.get_if<Horn>();
    if (!h) throw HypothesisError("this path needs a horn");
    return *h;
}

// Points k sqrt(t) to the right of `origin`, clipped to (lo, hi).
std::vector<double> scale_breakpoints(double lo, double hi, double origin, double t) {
    std::vector<double> pts = {lo, hi};
    const double s = std::sqrt(t);
    for (double k : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0}) {
        for (double sign : {-1.0, 1.0}) {
            const double p = origin + sign * k * s;
            if (p > lo && p < hi) pts.push_back(p);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Radial density of the heat kernel: m omega_m rho^(m-1) (4 pi t)^(-m/2) e^(-rho^2/(4t)).
double radial_kernel(int m, double rho, double t) {
    const double area = m * geometry::unit_ball_volume(m);
    return area * std::pow(rho, m - 1) * std::pow(4.0 * kPi * t, -0.5 * m) * std::exp(-rho * rho / (4.0 * t));
}

Estimate mc_pair(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed, bool escape) {
    require_time(t);
    if (!shape.finite_volume()) throw HypothesisError("Monte Carlo heat content needs a finite-volume shape");
    if (samples < 2) throw InvalidInput("Monte Carlo heat content needs at least two samples");
    if (shape.kind() == geometry::Kind::horn) throw HypothesisError("use the horn estimators for horns");
    const auto m = static_cast<std::size_t>(shape.dimension());
    const double vol = geometry::geo_summary(shape).volume;
    const double sigma = std::sqrt(2.0 * t);
    const auto summary = mc_mean(samples, seed, 2 * m, [&](Rng& rng, std::span<double> buf) {
        auto x = buf.subspan(0, m);
        auto y = buf.subspan(m, m);
        geometry::sample_uniform(shape, rng, x);
        for (std::size_t i = 0; i < m; ++i) y[i] = x[i] + sigma * rng.normal();
        return (geometry::contains(shape, y) != escape) ? 1.0 : 0.0;
    });
    return summary.to_estimate(vol);
}

// Σ_{i != j} ∫_{D_i} ∫_{D_j} p for a disjoint union, by Monte Carlo.
Estimate union_cross_term(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed) {
    const auto& members = shape.get_if<geometry::DisjointUnion>()->members;
    const auto m = static_cast<std::size_t>(shape.dimension());
    const double vol = geometry::geo_summary(shape).volume;
    const double sigma = std::sqrt(2.0 * t);
    std::vector<double> volumes;
    for (const auto& member : members) volumes.push_back(geometry::geo_summary(member).volume);
    const auto summary = mc_mean(samples, seed, 2 * m, [&](Rng& rng, std::span<double> buf) {
        auto x = buf.subspan(0, m);
        auto y = buf.subspan(m, m);
        double pick = rng.uniform() * vol;
        std::size_t home = 0;
        while (home + 1 < members.size() && pick >= volumes[home]) pick -= volumes[home++];
        geometry::sample_uniform(members[home], rng, x);
        for (std::size_t i = 0; i < m; ++i) y[i] = x[i] + sigma * rng.normal();
        for (std::size_t j = 0; j < members.size(); ++j)
            if (j != home && geometry::contains(members[j], y)) return 1.0;
        return 0.0;
    });
    return summary.to_estimate(vol);
}

Estimate horn_quadrature(const Horn& h, double t) {
    const int k = h.m - 1;
    const double W = kWindow * std::sqrt(t);
    quadrature::Options inner_opts;
    inner_opts.abs_tol = 1e-16;
    inner_opts.rel_tol = 1e-13;
    // Inner integral over the displacement w = y - x, which stays resolvable
    // when the power-tail substitution pushes x far out.
    auto inner = [&](double x) {
        const double gx = h.profile(x);
        auto f = [&](double w) {
            return kernel::heat_kernel_1d(w, t) * std::pow(kernel::interval_cross_content(gx, h.profile(x + w), t), k);
        };
        return quadrature::integrate(f, scale_breakpoints(std::max(1.0 - x, -W), W, 0.0, t), inner_opts).value;
    };
    quadrature::Options outer_opts;
    outer_opts.abs_tol = 1e-13;
    outer_opts.rel_tol = 1e-9;
    outer_opts.max_subdivisions = 20000;
    const double x0 = 1.0 + W;
    const auto head = quadrature::integrate(inner, scale_breakpoints(1.0, x0, 1.0, t), outer_opts);
    const double q = 2.0 / (2.0 * h.exponent() - 1.0);
    const auto tail = quadrature::integrate_power_tail(inner, x0, q, outer_opts);
    const double value = head.value + tail.value;
    const double err = head.error + tail.error + 1e-12 * std::abs(value);
    return {value, err, Method::quadrature, 0};
}

std::vector<double> log_points(double tmin, double tmax, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = tmin;
        return out;
    }
    const double a = std::log(tmin);
    const double b = std::log(tmax);
    for (std::size_t i = 0; i < n; ++i) out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    out.front() = tmin;
    out.back() = tmax;
    return out;
}

void check_range(double tmin, double tmax, std::size_t points) {
    if (!(tmin > 0.0) || !std::isfinite(tmax)) throw InvalidInput("time grid needs 0 < tmin and finite tmax");
    if (points == 0) throw InvalidInput("time grid needs at least one point");
    if (points > 1 && !(tmax > tmin)) throw InvalidInput("time grid needs tmin < tmax");
}

}  // namespace

TimeGrid TimeGrid::log(double tmin, double tmax, std::size_t points) {
    check_range(tmin, tmax, points);
    return {log_points(tmin, tmax, points), Spacing::log};
}

TimeGrid TimeGrid::linear(double tmin, double tmax, std::size_t points) {
    check_range(tmin, tmax, points);
    std::vector<double> out(points, tmin);
    for (std::size_t i = 1; i < points; ++i)
        out[i] = tmin + (tmax - tmin) * static_cast<double>(i) / static_cast<double>(points - 1);
    if (points > 1) out.back() = tmax;
    return {out, Spacing::linear};
}

TimeGrid TimeGrid::explicit_times(std::vector<double> times) {
    if (times.empty()) throw InvalidInput("time grid is empty");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] > 0.0) || !std::isfinite(times[i])) throw InvalidInput("times must be positive and finite");
        if (i > 0 && !(times[i] > times[i - 1])) throw InvalidInput("times must be strictly increasing");
    }
    return {std::move(times), Spacing::explicit_times};
}

TimeGrid TimeGrid::per_decade(double tmin, double tmax, double density) {
    check_range(tmin, tmax, 2);
    const auto n = static_cast<std::size_t>(std::ceil(density * std::log10(tmax / tmin))) + 1;
    return log(tmin, tmax, n);
}

std::string_view to_string(Spacing s) {
    switch (s) {
        case Spacing::log:
            return "log";
        case Spacing::linear:
            return "linear";
        case Spacing::explicit_times:
            break;
    }
    return "explicit";
}

std::string_view to_string(Quantity q) { return q == Quantity::H ? "H" : "F"; }

Quantity quantity_from_string(std::string_view s) {
    if (s == "H") return Quantity::H;
    if (s == "F") return Quantity::F;
    throw InvalidInput("quantity must be H or F");
}

double heat_content_interval(double length, double t) {
    require_time(t);
    return kernel::interval_cross_content(length, length, t);
}

double heat_loss_interval(double length, double t) {
    require_time(t);
    const double st = std::sqrt(t);
    return length * std::erfc(length / (2.0 * st)) - 2.0 * st / std::sqrt(kPi) * std::expm1(-length * length / (4.0 * t));
}

Estimate heat_content_exact_product(const Shape& shape, double t) {
    const Box& b = as_box(shape);
    require_time(t);
    double v = 1.0;
    for (double L : b.lengths) v *= heat_content_interval(L, t);
    return {v, 1e-14 * v, Method::closed_form, 0};
}

Estimate heat_loss_exact_product(const Shape& shape, double t) {
    const Box& b = as_box(shape);
    require_time(t);
    double log_keep = 0.0;
    double vol = 1.0;
    for (double L : b.lengths) {
        log_keep += std::log1p(-heat_loss_interval(L, t) / L);
        vol *= L;
    }
    const double v = -vol * std::expm1(log_keep);
    return {v, 1e-14 * v, Method::closed_form, 0};
}

Estimate heat_content_quadrature(const Shape& shape, double t) {
    const Ball& b = as_ball(shape);
    require_time(t);
    const int m = shape.dimension();
    if (m == 1) return Estimate::exact(heat_content_interval(2.0 * b.radius, t));
    const double a = b.radius;
    auto f = [&](double rho) { return radial_kernel(m, rho, t) * geometry::ball_intersection_volume(m, a, a, rho); };
    quadrature::Options opts;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-14;
    const double hi = std::min(2.0 * a, kWindow * std::sqrt(t));
    return quadrature::integrate(f, scale_breakpoints(0.0, hi, 0.0, t), opts).to_estimate();
}

Estimate heat_loss_quadrature(const Shape& shape, double t) {
    const Ball& b = as_ball(shape);
    require_time(t);
    const int m = shape.dimension();
    const double a = b.radius;
    if (m == 1) return Estimate::exact(heat_loss_interval(2.0 * a, t));
    auto f = [&](double rho) { return radial_kernel(m, rho, t) * geometry::ball_self_overlap_deficit(m, a, rho); };
    quadrature::Options opts;
    opts.abs_tol = 1e-17;
    opts.rel_tol = 1e-13;
    const double hi = std::min(2.0 * a, kWindow * std::sqrt(t));
    Estimate e = quadrature::integrate(f, scale_breakpoints(0.0, hi, 0.0, t), opts).to_estimate();
    // Displacements beyond 2a leave the ball entirely.
    const double vol = geometry::unit_ball_volume(m) * std::pow(a, m);
    e.value += vol * boost::math::gamma_q(0.5 * m, a * a / t);
    return e;
}

namespace {

Estimate radial_oracle(const Shape& shape, double t, bool loss) {
    const Ball& b = as_ball(shape);
    require_time(t);
    const int m = shape.dimension();
    const double a = b.radius;
    const double area = m * geometry::unit_ball_volume(m);
    double inner_err = 0.0;
    auto f = [&](double r) {
        geometry::Point x(static_cast<std::size_t>(m), 0.0);
        for (int i = 0; i < m; ++i) x[i] = b.center[i];
        x[0] += r;
        const Estimate u = kernel::u_ball(shape, x, t);
        inner_err = std::max(inner_err, u.error_radius);
        return area * std::pow(r, m - 1) * (loss ? 1.0 - u.value : u.value);
    };
    quadrature::Options opts;
    opts.abs_tol = 1e-11;
    opts.rel_tol = 1e-11;
    const auto res = quadrature::integrate(f, scale_breakpoints(0.0, a, a, t), opts);
    const double vol = geometry::unit_ball_volume(m) * std::pow(a, m);
    return {res.value, res.error + inner_err * vol, Method::quadrature, 0};
}

}  // namespace

Estimate heat_content_radial(const Shape& shape, double t) { return radial_oracle(shape, t, false); }
Estimate heat_loss_radial(const Shape& shape, double t) { return radial_oracle(shape, t, true); }

Estimate heat_content_mc(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed) {
    return mc_pair(shape, t, samples, seed, false);
}

Estimate heat_loss_mc(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed) {
    return mc_pair(shape, t, samples, seed, true);
}

Estimate heat_content_horn(const Shape& shape, double t, double x_max, std::uint64_t samples, std::uint64_t seed) {
    const Horn& h = as_horn(shape);
    require_time(t);
    if (!h.finite_heat_content()) return Estimate::infinite(Method::monte_carlo);
    if (samples < 2) throw InvalidInput("horn estimator needs at least two samples");
    const int m = h.m;
    const double R = std::sqrt(8.0 * m * t);
    if (!(x_max > 1.0 + R)) throw InvalidInput("x_max must exceed 1 + (8mt)^(1/2)");

    const double beta = h.exponent();
    const double S = h.section_measure();
    const double full = geometry::unit_ball_volume(m) * std::pow(R, m);
    const double c2 = bounds::Constants::for_dimension(m).c2 * std::pow(t, -0.5 * m);

    constexpr std::size_t kMaxSlices = 4096;
    const double base_width = std::min(1.0, std::sqrt(t));
    auto n_slices = static_cast<std::size_t>(std::ceil((x_max - 1.0) / base_width));
    n_slices = std::clamp<std::size_t>(n_slices, 1, kMaxSlices);
    const double width = (x_max - 1.0) / static_cast<double>(n_slices);

    // A-priori weight: the slice volume capped by the mu-sandwich upper bound.
    std::vector<double> weight(n_slices);
    double total_weight = 0.0;
    for (std::size_t k = 0; k < n_slices; ++k) {
        const double a = 1.0 + width * k;
        const double b = (k + 1 == n_slices) ? x_max : a + width;
        const double vol = geometry::horn_slab_volume(h, a, b);
        const double mu_cap = std::min(full, S * geometry::power_integral(beta, std::max(1.0, a - R), b + R));
        weight[k] = std::min(vol, c2 * vol * mu_cap);
        total_weight += weight[k];
    }
    const std::uint64_t n_total = round_up_pow2(samples);
    std::vector<std::uint64_t> alloc(n_slices);
    std::uint64_t used = 0;
    for (std::size_t k = 0; k < n_slices; ++k) {
        alloc[k] = std::max<std::uint64_t>(
            2, static_cast<std::uint64_t>(std::floor(static_cast<double>(n_total) * weight[k] / total_weight)));
        used += alloc[k];
    }

    const double sigma = std::sqrt(2.0 * t);
    std::vector<double> mean(n_slices), var(n_slices);
    parallel_for(n_slices, [&](std::size_t k) {
        Rng rng(derive_seed(seed, k));
        const double a = 1.0 + width * k;
        const double b = (k + 1 == n_slices) ? x_max : a + width;
        geometry::Point x(m), y(m);
        double sum = 0.0, sum_sq = 0.0;
        for (std::uint64_t i = 0; i < alloc[k]; ++i) {
            x[0] = rng.uniform(a, b);
            const double side = h.profile(x[0]);
            for (int j = 1; j < m; ++j) x[j] = side * rng.uniform();
            for (int j = 0; j < m; ++j) y[j] = x[j] + sigma * rng.normal();
            // Density of x_1 is uniform, so each draw carries the section measure.
            const double v = geometry::contains(shape, y) ? (b - a) * S * std::pow(x[0], -beta) : 0.0;
            sum += v;
            sum_sq += v * v;
        }
        const double n = static_cast<double>(alloc[k]);
        mean[k] = sum / n;
        const double s2 = std::max(0.0, (sum_sq - n * mean[k] * mean[k]) / (n - 1.0));
        const double floor = geometry::horn_slab_volume(h, a, b) / n;
        var[k] = std::max(s2, floor * floor) / n;
    });
    double head = 0.0, head_var = 0.0;
    for (std::size_t k = 0; k < n_slices; ++k) {
        head += mean[k];
        head_var += var[k];
    }
    const auto tail = geometry::horn_mu_tail_bracket(h, R, x_max);
    const double tail_upper = c2 * (tail.upper + tail.quadrature_error);
    return {head + 0.5 * tail_upper, kSigmaMultiplier * std::sqrt(head_var) + 0.5 * tail_upper, Method::monte_carlo,
            used};
}

Estimate heat_content_horn_quadrature(const Shape& shape, double t) {
    const Horn& h = as_horn(shape);
    require_time(t);
    if (!h.finite_heat_content()) return Estimate::infinite(Method::quadrature);
    return horn_quadrature(h, t);
}

Estimate heat_content(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed) {
    switch (shape.kind()) {
        case geometry::Kind::ball:
            return heat_content_quadrature(shape, t);
        case geometry::Kind::box:
            return heat_content_exact_product(shape, t);
        case geometry::Kind::horn:
            return heat_content_horn_quadrature(shape, t);
        case geometry::Kind::stadium:
            return heat_content_mc(shape, t, samples, seed);
        case geometry::Kind::disjoint_union: {
            // Diagonal blocks by each member's best path, the off-diagonal
            // cross content between members by Monte Carlo.
            const auto& members = shape.get_if<geometry::DisjointUnion>()->members;
            Estimate total = union_cross_term(shape, t, samples, derive_seed(seed, members.size()));
            for (std::size_t i = 0; i < members.size(); ++i)
                total = combine(1.0, total, 1.0, heat_content(members[i], t, samples, derive_seed(seed, i)));
            return total;
        }
    }
    throw HypothesisError("unsupported shape");
}

Estimate heat_loss(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed) {
    if (!shape.finite_volume()) throw HypothesisError("heat loss needs a finite-volume shape");
    switch (shape.kind()) {
        case geometry::Kind::ball:
            return heat_loss_quadrature(shape, t);
        case geometry::Kind::box:
            return heat_loss_exact_product(shape, t);
        case geometry::Kind::horn: {
            const double vol = geometry::geo_summary(shape).volume;
            return combine(1.0, Estimate::exact(vol), -1.0, heat_content_horn_quadrature(shape, t));
        }
        case geometry::Kind::stadium:
            return heat_loss_mc(shape, t, samples, seed);
        case geometry::Kind::disjoint_union: {
            const auto& members = shape.get_if<geometry::DisjointUnion>()->members;
            Estimate total = scale(-1.0, union_cross_term(shape, t, samples, derive_seed(seed, members.size())));
            for (std::size_t i = 0; i < members.size(); ++i)
                total = combine(1.0, total, 1.0, heat_loss(members[i], t, samples, derive_seed(seed, i)));
            return total;
        }
    }
    throw HypothesisError("unsupported shape");
}

Estimate heat_loss_preunkert(const Shape& shape, double t) {
    const Box& b = as_box(shape);
    require_time(t);
    quadrature::Options opts;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-13;
    double log_keep = 0.0;
    double vol = 1.0;
    double err = 0.0;
    for (double L : b.lengths) {
        // ∫_{x<0} u + ∫_{x>L} u; both halves equal by symmetry.
        auto f = [&](double w) { return kernel::u_interval(0.0, L, -w, t); };
        std::vector<double> pts = scale_breakpoints(0.0, kWindow * std::sqrt(t) + L, 0.0, t);
        const auto res = quadrature::integrate(f, pts, opts);
        const double Fi = 2.0 * res.value;
        err += 2.0 * res.error / L;
        log_keep += std::log1p(-Fi / L);
        vol *= L;
    }
    const double v = -vol * std::expm1(log_keep);
    return {v, vol * err, Method::quadrature, 0};
}

Estimate l2_curve(const Shape& shape, double t) {
    const Box& b = as_box(shape);
    require_time(t);
    quadrature::Options opts;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-14;
    const double half = 0.5 * t;
    double value = 1.0;
    double rel_err = 0.0;
    for (double L : b.lengths) {
        auto f = [&](double x) {
            const double u = kernel::u_interval(0.0, L, x, half);
            return u * u;
        };
        const double W = kWindow * std::sqrt(half);
        std::vector<double> pts = scale_breakpoints(-W, 0.0, 0.0, half);
        const std::vector<double> right = scale_breakpoints(L, L + W, L, half);
        pts.insert(pts.end(), right.begin(), right.end());
        for (double p : scale_breakpoints(0.0, L, 0.0, half)) pts.push_back(p);
        for (double p : scale_breakpoints(0.0, L, L, half)) pts.push_back(p);
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        const auto res = quadrature::integrate(f, pts, opts);
        value *= res.value;
        rel_err += res.error / res.value;
    }
    return {value, value * rel_err, Method::quadrature, 0};
}

std::string_view to_string(CurveMethod m) {
    switch (m) {
        case CurveMethod::automatic:
            return "auto";
        case CurveMethod::exact:
            return "exact";
        case CurveMethod::quadrature:
            return "quadrature";
        case CurveMethod::monte_carlo:
            break;
    }
    return "mc";
}

CurveMethod curve_method_from_string(std::string_view s) {
    if (s == "auto") return CurveMethod::automatic;
    if (s == "exact") return CurveMethod::exact;
    if (s == "quadrature") return CurveMethod::quadrature;
    if (s == "mc") return CurveMethod::monte_carlo;
    throw InvalidInput("method must be auto, exact, quadrature or mc");
}

namespace {

Estimate evaluate_point(const Shape& shape, double t, const CurveOptions& opts, std::uint64_t seed) {
    const bool loss = opts.quantity == Quantity::F;
    const bool horn = shape.kind() == geometry::Kind::horn;
    switch (opts.method) {
        case CurveMethod::automatic:
            return loss ? heat_loss(shape, t, opts.samples, seed) : heat_content(shape, t, opts.samples, seed);
        case CurveMethod::exact:
            return loss ? heat_loss_exact_product(shape, t) : heat_content_exact_product(shape, t);
        case CurveMethod::quadrature:
            if (horn) {
                const Estimate h = heat_content_horn_quadrature(shape, t);
                if (!loss) return h;
                if (!shape.finite_volume()) throw HypothesisError("heat loss needs a finite-volume shape");
                return combine(1.0, Estimate::exact(geometry::geo_summary(shape).volume), -1.0, h);
            }
            if (shape.kind() != geometry::Kind::ball) throw HypothesisError("the quadrature path supports balls and horns");
            return loss ? heat_loss_quadrature(shape, t) : heat_content_quadrature(shape, t);
        case CurveMethod::monte_carlo:
            if (horn) {
                const Estimate h = heat_content_horn(shape, t, opts.horn_x_max, opts.samples, seed);
                if (!loss) return h;
                if (!shape.finite_volume()) throw HypothesisError("heat loss needs a finite-volume shape");
                return combine(1.0, Estimate::exact(geometry::geo_summary(shape).volume), -1.0, h);
            }
            return loss ? heat_loss_mc(shape, t, opts.samples, seed) : heat_content_mc(shape, t, opts.samples, seed);
    }
    throw InvalidInput("unknown method");
}

}  // namespace

HeatCurve compute_curve(const Shape& shape, const TimeGrid& grid, const CurveOptions& opts) {
    if (opts.method == CurveMethod::exact && shape.kind() != geometry::Kind::box)
        throw HypothesisError("the exact path is available for boxes only");
    HeatCurve curve{shape, grid, std::vector<Estimate>(grid.times.size()), opts.quantity};
    parallel_for(grid.times.size(), [&](std::size_t i) {
        curve.values[i] = evaluate_point(shape, grid.times[i], opts, derive_seed(opts.seed, i));
    });
    return curve;
}

std::string format_number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_csv(std::ostream& out, const HeatCurve& curve) {
    out << "t,value,error_radius,method,samples\n";
    for (std::size_t i = 0; i < curve.values.size(); ++i) {
        const Estimate& e = curve.values[i];
        out << format_number(curve.grid.times[i]) << ',' << format_number(e.value) << ','
            << format_number(e.error_radius) << ',' << to_string(e.method) << ',' << e.samples << '\n';
    }
}

HeatCurve read_csv(std::istream& in, const Shape& shape, Quantity q) {
    std::string line;
    if (!std::getline(in, line) || line != "t,value,error_radius,method,samples")
        throw InvalidInput("curve file must start with the header t,value,error_radius,method,samples");
    std::vector<double> times;
    std::vector<Estimate> values;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell[5];
        for (int c = 0; c < 5; ++c)
            if (!std::getline(ss, cell[c], ','))
                throw InvalidInput("curve file row " + std::to_string(row) + " has fewer than 5 columns");
        try {
            times.push_back(std::stod(cell[0]));
            values.push_back({std::stod(cell[1]), std::stod(cell[2]), method_from_string(cell[3]),
                              std::stoull(cell[4])});
        } catch (const std::logic_error&) {
            throw InvalidInput("curve file row " + std::to_string(row) + " is not numeric");
        }
    }
    return {shape, TimeGrid::explicit_times(std::move(times)), std::move(values), q};
}

}  // namespace heatcontent::content
