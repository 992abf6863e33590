#include "heatcontent/asymptotics.hpp"

#include <cmath>
#include <numbers>

#include "heatcontent/kernel.hpp"
#include "heatcontent/monte_carlo.hpp"
#include "heatcontent/quadrature.hpp"

namespace heatcontent::asymptotics {

namespace {

constexpr double kPi = std::numbers::pi;

struct Selected {
    std::vector<double> t;
    std::vector<Estimate> v;
};

Selected select(const HeatCurve& curve, Window w) {
    if (!(w.t_min <= w.t_max)) throw InvalidInput("fit window needs t_min <= t_max");
    const auto& times = curve.grid.times;
    if (times.empty() || w.t_min > times.back() || w.t_max < times.front())
        throw InvalidInput("fit window lies outside the curve range");
    Selected s;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] >= w.t_min && times[i] <= w.t_max) {
            s.t.push_back(times[i]);
            s.v.push_back(curve.values[i]);
        }
    }
    return s;
}

FitResult finish(const Line& line, double coefficient, double predicted, const Selected& s, Model model) {
    FitResult f;
    f.coefficient = coefficient;
    f.predicted = predicted;
    f.relative_error = predicted != 0.0 ? std::abs(coefficient - predicted) / std::abs(predicted)
                                        : std::abs(coefficient);
    f.window = {s.t.front(), s.t.back()};
    f.residual_norm = line.residual_norm;
    f.points = s.t.size();
    f.model = model;
    return f;
}

// Heat loss at each selected point, from whichever quantity the curve holds.
std::vector<double> losses(const HeatCurve& curve, const Selected& s, double volume) {
    std::vector<double> F;
    for (const auto& e : s.v) {
        if (e.is_infinite()) throw HypothesisError("fit needs finite curve values");
        F.push_back(curve.quantity == content::Quantity::F ? e.value : volume - e.value);
    }
    return F;
}

}  // namespace

std::string_view to_string(Model m) {
    switch (m) {
        case Model::sqrt_coeff:
            return "sqrt_coeff";
        case Model::h3_coeff:
            return "h3_coeff";
        case Model::power_exponent:
            break;
    }
    return "power_exponent";
}

nlohmann::json to_json(const FitResult& f) {
    return {{"model", std::string(to_string(f.model))},
            {"coefficient", f.coefficient},
            {"predicted", f.predicted},
            {"relative_error", f.relative_error},
            {"window", {f.window.t_min, f.window.t_max}},
            {"residual_norm", f.residual_norm},
            {"points", f.points}};
}

Line least_squares(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n) throw InvalidInput("least squares needs at least two paired points");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw InvalidInput("least squares needs distinct abscissae");
    Line line;
    line.slope = sxy / sxx;
    line.intercept = my - line.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - line.intercept - line.slope * x[i];
        rss += r * r;
    }
    line.residual_norm = std::sqrt(rss);
    return line;
}

FitResult fit_perimeter_coefficient(const HeatCurve& curve, Window window) {
    const auto g = geometry::geo_summary(curve.shape);
    if (!std::isfinite(g.volume) || !std::isfinite(g.perimeter))
        throw HypothesisError("perimeter fit needs finite volume and perimeter");
    const Selected s = select(curve, window);
    if (s.t.size() < 6) throw InvalidInput("perimeter fit needs at least 6 points in the window");
    const auto F = losses(curve, s, g.volume);
    std::vector<double> y(s.t.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = F[i] / std::sqrt(s.t[i]);
    const Line line = least_squares(s.t, y);
    return finish(line, line.intercept, g.perimeter / std::sqrt(kPi), s, Model::sqrt_coeff);
}

double h3_predicted_ball(int m, double radius) {
    const double k = m - 1.0;
    const double P = m * geometry::unit_ball_volume(m) * std::pow(radius, m - 1);
    return -P * (5.0 * k * k / 32.0 + k / 16.0) / (radius * radius);
}

FitResult h3_check_ball(const HeatCurve& curve, Window window) {
    const auto* ball = curve.shape.get_if<geometry::Ball>();
    if (!ball) throw HypothesisError("h3 check is defined for balls only");
    const int m = curve.shape.dimension();
    const auto g = geometry::geo_summary(curve.shape);
    const Selected s = select(curve, window);
    if (s.t.size() < 3) throw InvalidInput("h3 fit needs at least 3 points in the window");
    const auto F = losses(curve, s, g.volume);
    std::vector<double> x(s.t.size()), y(s.t.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double lead = g.perimeter * std::sqrt(s.t[i] / kPi);
        x[i] = std::sqrt(s.t[i]);
        y[i] = (lead - F[i]) / std::pow(s.t[i], 1.5);
    }
    const Line line = least_squares(x, y);
    return finish(line, line.intercept, h3_predicted_ball(m, ball->radius), s, Model::h3_coeff);
}

double horn_predicted_exponent(int m, double alpha) { return ((m - 1) * alpha - 1.0) / (2.0 * alpha); }

namespace {

void require_power_regime(const geometry::Horn& h) {
    const double k = h.m - 1;
    if (!(h.alpha > 0.5 / k && h.alpha < 1.0 / k))
        throw InvalidInput("horn exponent needs 1/(2(m-1)) < alpha < 1/(m-1)");
}

}  // namespace

FitResult horn_exponent(const HeatCurve& curve) {
    const auto* h = curve.shape.get_if<geometry::Horn>();
    if (!h) throw HypothesisError("horn exponent needs a horn");
    require_power_regime(*h);
    if (curve.quantity != content::Quantity::H) throw InvalidInput("horn exponent fits heat content curves");
    Selected s = select(curve, {});
    if (s.t.size() < 2) throw InvalidInput("horn exponent needs at least two times");
    std::vector<double> x(s.t.size()), y(s.t.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (!(s.v[i].value > 0.0) || s.v[i].is_infinite()) throw HypothesisError("horn curve must be finite and positive");
        x[i] = std::log(s.t[i]);
        y[i] = std::log(s.v[i].value);
    }
    const Line line = least_squares(x, y);
    return finish(line, line.slope, horn_predicted_exponent(h->m, h->alpha), s, Model::power_exponent);
}

FitResult horn_exponent(const Shape& horn, const TimeGrid& grid) {
    const auto* h = horn.get_if<geometry::Horn>();
    if (!h) throw HypothesisError("horn exponent needs a horn");
    require_power_regime(*h);
    content::CurveOptions opts;
    opts.method = content::CurveMethod::quadrature;
    return horn_exponent(content::compute_curve(horn, grid, opts));
}

std::vector<Estimate> lp_convergence_check(const Shape& shape, double p, const TimeGrid& grid,
                                           std::uint64_t samples, std::uint64_t seed) {
    if (!(p >= 1.0)) throw InvalidInput("Lp check needs p >= 1");
    if (!shape.finite_volume()) throw HypothesisError("Lp check needs a finite-volume shape");
    const int m = shape.dimension();
    std::vector<Estimate> out;
    for (std::size_t i = 0; i < grid.times.size(); ++i) {
        const double t = grid.times[i];
        const std::uint64_t s = derive_seed(seed, i);
        if (p == 1.0) {
            out.push_back(scale(2.0, content::heat_loss(shape, t, samples, s)));
            continue;
        }
        if (const auto* b = shape.get_if<geometry::Ball>()) {
            const double a = b->radius;
            const double area = m * geometry::unit_ball_volume(m);
            auto f = [&](double r) {
                geometry::Point x(b->center);
                x[0] += r;
                const double u = kernel::u_ball(shape, x, t).value;
                const double d = r < a ? 1.0 - u : u;
                return area * std::pow(r, m - 1) * std::pow(d, p);
            };
            const double st = std::sqrt(t);
            std::vector<double> pts = {0.0};
            for (double k : {-32.0, -8.0, -2.0, 0.0, 2.0, 8.0, 32.0}) {
                const double q = a + k * st;
                if (q > pts.back()) pts.push_back(q);
            }
            if (a + 60.0 * st > pts.back()) pts.push_back(a + 60.0 * st);
            quadrature::Options opts;
            opts.abs_tol = 1e-12;
            opts.rel_tol = 1e-10;
            out.push_back(quadrature::integrate(f, pts, opts).to_estimate());
            continue;
        }
        const auto* box = shape.get_if<geometry::Box>();
        if (!box) throw HypothesisError("Lp check with p > 1 supports balls and boxes");
        const double pad = 12.0 * std::sqrt(t);
        double padded = 1.0;
        for (double L : box->lengths) padded *= L + 2.0 * pad;
        const auto mm = static_cast<std::size_t>(m);
        const auto summary = mc_mean(samples, s, mm, [&](Rng& rng, std::span<double> x) {
            for (std::size_t j = 0; j < mm; ++j) x[j] = box->corner[j] - pad + (box->lengths[j] + 2.0 * pad) * rng.uniform();
            const double u = kernel::u_box(shape, x, t).value;
            const double d = geometry::contains(shape, x) ? 1.0 - u : u;
            return std::pow(d, p);
        });
        out.push_back(summary.to_estimate(padded));
    }
    return out;
}

}  // namespace heatcontent::asymptotics
