#include "heatcontent/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include "heatcontent/content.hpp"
#include "heatcontent/kernel.hpp"
#include "heatcontent/monte_carlo.hpp"
#include "heatcontent/quadrature.hpp"

namespace heatcontent::bounds {

namespace {

constexpr double kPi = std::numbers::pi;

double json_number(const nlohmann::json& v) {
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "inf") return kInf;
        if (s == "-inf") return -kInf;
        throw InvalidInput("unexpected string in numeric field: " + s);
    }
    return v.get<double>();
}

nlohmann::json number_json(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

geometry::GeoSummary require_smooth(const Shape& shape) {
    const auto g = geometry::geo_summary(shape);
    if (!(g.smoothness_radius > 0.0)) throw HypothesisError("shape is not R-smooth for any R > 0");
    if (!std::isfinite(g.volume)) throw HypothesisError("shape has infinite volume");
    return g;
}

void require_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) throw InvalidInput("time must be positive and finite");
}

BoundReport make(std::string name, double t, double lower, const Estimate& measured, double upper) {
    BoundReport r;
    r.name = std::move(name);
    r.t = t;
    r.lower = lower;
    r.measured = measured;
    r.upper = upper;
    return r;
}

}  // namespace

Constants Constants::for_dimension(int m) {
    if (m < 1) throw InvalidInput("dimension must be positive");
    const double md = m;
    const double base = std::pow(4.0 * kPi, -0.5 * md);
    const double den_c = 1.0 - std::pow(2.0, md) * std::exp(-1.5 * md);
    const double den_d = 1.0 - std::pow(2.0, 0.5 * (md + 2.0)) * std::exp(-2.0 * md);
    if (!(den_c > 0.0) || !(den_d > 0.0)) throw InvalidInput("sandwich constants undefined in this dimension");
    return {m, std::exp(-2.0 * md) * base, base / den_c, std::exp(-4.0 * md) * base, base / den_d};
}

void BoundReport::recompute() {
    const double v = measured.value;
    const double eps = measured.error_radius;
    if (measured.is_infinite()) {
        slack_lower = std::isinf(lower) ? 0.0 : kInf;
        slack_upper = std::isinf(upper) ? 0.0 : -kInf;
        pass = lower == kInf && upper == kInf;
        marginal = false;
        return;
    }
    slack_lower = v - lower;
    slack_upper = upper - v;
    const bool strict = lower <= v && v <= upper;
    const bool loose = lower - eps - lower_radius <= v && v <= upper + eps + upper_radius;
    pass = loose;
    marginal = loose && !strict;
}

nlohmann::json to_json(const BoundReport& r) {
    nlohmann::json j;
    j["name"] = r.name;
    j["t"] = r.t;
    if (r.t_other != 0.0) j["t_other"] = r.t_other;
    j["lower"] = number_json(r.lower);
    j["lower_radius"] = r.lower_radius;
    j["measured"] = number_json(r.measured.value);
    j["error_radius"] = r.measured.error_radius;
    j["method"] = std::string(to_string(r.measured.method));
    j["samples"] = r.measured.samples;
    j["upper"] = number_json(r.upper);
    j["upper_radius"] = r.upper_radius;
    j["slack_lower"] = number_json(r.slack_lower);
    j["slack_upper"] = number_json(r.slack_upper);
    j["pass"] = r.pass;
    j["marginal"] = r.marginal;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

BoundReport report_from_json(const nlohmann::json& j) {
    BoundReport r;
    r.name = j.at("name").get<std::string>();
    r.t = j.at("t").get<double>();
    r.t_other = j.value("t_other", 0.0);
    r.lower = json_number(j.at("lower"));
    r.lower_radius = j.at("lower_radius").get<double>();
    r.measured = {json_number(j.at("measured")), j.at("error_radius").get<double>(),
                  method_from_string(j.at("method").get<std::string>()), j.at("samples").get<std::uint64_t>()};
    r.upper = json_number(j.at("upper"));
    r.upper_radius = j.at("upper_radius").get<double>();
    r.note = j.value("note", std::string());
    r.recompute();
    return r;
}

void canonical_order(std::vector<BoundReport>& reports) {
    std::stable_sort(reports.begin(), reports.end(), [](const BoundReport& a, const BoundReport& b) {
        if (a.name != b.name) return a.name < b.name;
        if (a.t != b.t) return a.t < b.t;
        return a.t_other < b.t_other;
    });
}

void write_jsonl(std::ostream& out, const std::vector<BoundReport>& reports) {
    for (const auto& r : reports) out << to_json(r).dump() << '\n';
}

void write_table(std::ostream& out, const std::vector<BoundReport>& reports) {
    auto num = [](double v) {
        std::ostringstream s;
        if (std::isinf(v))
            s << (v > 0 ? "inf" : "-inf");
        else
            s << std::setprecision(6) << v;
        return s.str();
    };
    out << std::left << std::setw(22) << "name" << std::setw(12) << "t" << std::setw(14) << "lower" << std::setw(14)
        << "measured" << std::setw(12) << "radius" << std::setw(14) << "upper" << "status\n";
    for (const auto& r : reports) {
        std::string t = num(r.t);
        if (r.t_other != 0.0) t += "/" + num(r.t_other);
        const char* status = !r.pass ? "FAIL" : (r.marginal ? "pass (marginal)" : "pass");
        out << std::left << std::setw(22) << r.name << std::setw(12) << t << std::setw(14) << num(r.lower)
            << std::setw(14) << num(r.measured.value) << std::setw(12) << num(r.measured.error_radius) << std::setw(14)
            << num(r.upper) << status;
        if (!r.note.empty()) out << "  " << r.note;
        out << '\n';
    }
}

BoundReport verify_main_theorem(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed) {
    require_time(t);
    const auto g = require_smooth(shape);
    const int m = shape.dimension();
    // Deviation written through F = |D| - H, which is free of cancellation.
    const Estimate F = content::heat_loss(shape, t, samples, seed);
    const double lead = g.perimeter * std::sqrt(t / kPi);
    Estimate dev = F;
    dev.value = std::abs(lead - F.value);
    const double bound = m * m * m * std::pow(2.0, m + 2) * g.volume * t / (g.smoothness_radius * g.smoothness_radius);
    BoundReport r = make("main_theorem", t, -kInf, dev, bound);
    r.recompute();
    return r;
}

BoundReport verify_mu_sandwich(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed) {
    require_time(t);
    const int m = shape.dimension();
    const auto c = Constants::for_dimension(m);
    const double R = std::sqrt(8.0 * m * t);
    const double scale_t = std::pow(t, -0.5 * m);
    const Estimate I = geometry::mu_integral(shape, R, samples, derive_seed(seed, 1));
    const Estimate H = content::heat_content(shape, t, samples, derive_seed(seed, 2));
    BoundReport r;
    if (I.is_infinite()) {
        r = make("mu_sandwich", t, kInf, H, kInf);
        r.note = H.is_infinite() ? "both sides infinite" : "mu integral infinite but H finite";
    } else {
        r = make("mu_sandwich", t, c.c1 * scale_t * I.value, H, c.c2 * scale_t * I.value);
        r.lower_radius = c.c1 * scale_t * I.error_radius;
        r.upper_radius = c.c2 * scale_t * I.error_radius;
    }
    r.recompute();
    return r;
}

BoundReport verify_time_scaling(const Shape& shape, double t2, double t1, std::uint64_t samples, std::uint64_t seed) {
    require_time(t1);
    require_time(t2);
    if (t2 > t1) throw InvalidInput("time scaling needs t2 <= t1");
    const int m = shape.dimension();
    const auto c = Constants::for_dimension(m);
    const Estimate H2 = content::heat_content(shape, t2, samples, derive_seed(seed, 1));
    const Estimate H1 = content::heat_content(shape, t1, samples, derive_seed(seed, 2));
    if (H1.is_infinite()) throw HypothesisError("time scaling needs a finite H(t1)");
    const double factor = c.c2 / c.c1 * std::pow(t1 / t2, 0.5 * m);
    BoundReport r = make("time_scaling", t2, -kInf, H2, factor * H1.value);
    r.t_other = t1;
    r.upper_radius = factor * H1.error_radius;
    r.recompute();
    return r;
}

Estimate delta_gaussian_integral(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed) {
    require_time(t);
    if (!shape.finite_volume()) throw HypothesisError("delta integral needs a finite-volume shape");
    const int m = shape.dimension();
    if (const auto* b = shape.get_if<geometry::Ball>()) {
        const double area = m * geometry::unit_ball_volume(m);
        const double a = b->radius;
        auto f = [&](double r) { return area * std::pow(r, m - 1) * std::exp(-(a - r) * (a - r) / (8.0 * t)); };
        quadrature::Options opts;
        opts.abs_tol = 1e-14;
        opts.rel_tol = 1e-12;
        std::vector<double> pts = {0.0};
        for (double k : {64.0, 16.0, 4.0, 1.0}) {
            const double p = a - k * std::sqrt(t);
            if (p > pts.back()) pts.push_back(p);
        }
        pts.push_back(a);
        return quadrature::integrate(f, pts, opts).to_estimate();
    }
    const auto mm = static_cast<std::size_t>(m);
    const double vol = geometry::geo_summary(shape).volume;
    const auto summary = mc_mean(samples, seed, mm, [&](Rng& rng, std::span<double> x) {
        geometry::sample_uniform(shape, rng, x);
        const double d = geometry::delta(shape, x);
        return std::exp(-d * d / (8.0 * t));
    });
    return summary.to_estimate(vol);
}

BoundReport verify_trivial_bounds(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed) {
    require_time(t);
    if (!shape.finite_volume()) throw HypothesisError("trivial bounds need a finite-volume shape");
    const int m = shape.dimension();
    const double vol = geometry::geo_summary(shape).volume;
    const Estimate I = delta_gaussian_integral(shape, t, samples, derive_seed(seed, 1));
    const Estimate H = content::heat_content(shape, t, samples, derive_seed(seed, 2));
    const double w = std::pow(2.0, 0.5 * m);
    BoundReport r = make("trivial_bounds", t, vol - w * I.value, H, vol);
    r.lower_radius = w * I.error_radius;
    r.recompute();
    return r;
}

BoundReport verify_nu_sandwich(const Shape& shape, double t, std::uint64_t samples, std::uint64_t seed) {
    require_time(t);
    if (!shape.finite_volume()) throw HypothesisError("nu sandwich needs a finite-volume shape");
    const int m = shape.dimension();
    const auto c = Constants::for_dimension(m);
    const double R = 4.0 * std::sqrt(m * t);
    const double scale_t = std::pow(t, -0.5 * m);
    const Estimate J = geometry::nu_integral(shape, R, samples, derive_seed(seed, 1));
    const Estimate F = content::heat_loss(shape, t, samples, derive_seed(seed, 2));
    BoundReport r = make("nu_sandwich", t, c.d1 * scale_t * J.value, F, c.d2 * scale_t * J.value);
    r.lower_radius = c.d1 * scale_t * J.error_radius;
    r.upper_radius = c.d2 * scale_t * J.error_radius;
    r.recompute();
    return r;
}

BoundReport verify_subadditivity(const Shape& shape, double s, double t, std::uint64_t samples, std::uint64_t seed) {
    require_time(s);
    require_time(t);
    if (!shape.finite_volume()) throw HypothesisError("subadditivity needs a finite-volume shape");
    const Estimate Fst = content::heat_loss(shape, s + t, samples, derive_seed(seed, 1));
    const Estimate Fs = content::heat_loss(shape, s, samples, derive_seed(seed, 2));
    const Estimate Ft = content::heat_loss(shape, t, samples, derive_seed(seed, 3));
    BoundReport r = make("subadditivity", s, -kInf, Fst, Fs.value + Ft.value);
    r.t_other = t;
    r.upper_radius = Fs.error_radius + Ft.error_radius;
    r.recompute();
    return r;
}

std::vector<BoundReport> verify_geometric_props(const Shape& shape, std::size_t pinch_points) {
    const auto g = require_smooth(shape);
    const int m = shape.dimension();
    const double R = g.smoothness_radius;
    const double wm = geometry::unit_ball_volume(m);
    const double wm1 = geometry::unit_ball_volume(m - 1);
    std::vector<BoundReport> out;

    BoundReport count = make("component_count", 0.0, -kInf, Estimate::exact(g.component_count),
                             g.volume / (wm * std::pow(R, m)));
    count.recompute();
    out.push_back(count);

    // Diameter bound, component by component; report the tightest one.
    std::vector<Shape> comps;
    if (const auto* u = shape.get_if<geometry::DisjointUnion>())
        comps = u->members;
    else
        comps.push_back(shape);
    BoundReport diam;
    bool first = true;
    for (const auto& comp : comps) {
        const auto gc = geometry::geo_summary(comp);
        const double bound = (gc.volume + (2.0 * wm1 - wm) * std::pow(R, m)) / (wm1 * std::pow(R, m - 1));
        BoundReport r = make("diameter_bound", 0.0, -kInf, Estimate::exact(gc.diameter), bound);
        r.recompute();
        if (std::abs(bound - gc.diameter) <= 1e-12 * bound) r.note = "equality";
        if (first || r.slack_upper / r.upper < diam.slack_upper / diam.upper) diam = r;
        first = false;
    }
    out.push_back(diam);

    BoundReport per = make("perimeter_bound", 0.0, -kInf, Estimate::exact(g.perimeter), m * g.volume / R);
    per.recompute();
    if (std::abs(per.upper - g.perimeter) <= 1e-12 * per.upper) per.note = "equality";
    out.push_back(per);

    // The pinch needs the exact perimeter of D_r, available for balls,
    // stadiums and unions of them.
    bool pinchable = true;
    for (const auto& comp : comps) pinchable = pinchable && comp.kind() != geometry::Kind::box;
    if (pinchable) {
        for (std::size_t i = 1; i <= pinch_points; ++i) {
            const double r = R * static_cast<double>(i) / static_cast<double>(pinch_points + 1);
            const double ratio = (R - r) / R;
            const double p = geometry::parallel_perimeter(shape, r);
            BoundReport rep = make("parallel_pinch", r, g.perimeter * std::pow(ratio, m - 1), Estimate::exact(p),
                                   g.perimeter * std::pow(ratio, -(m - 1)));
            rep.measured.error_radius = 1e-12 * p;
            rep.recompute();
            out.push_back(rep);
        }
    }
    return out;
}

std::vector<BoundReport> verify_pointwise_lemmas(const Shape& shape, double t, std::size_t n_points,
                                                 std::uint64_t seed) {
    const auto* ball = shape.get_if<geometry::Ball>();
    if (!ball) throw HypothesisError("pointwise lemma verification uses balls");
    require_time(t);
    const int m = shape.dimension();
    const double R = ball->radius;
    std::vector<BoundReport> out;
    Rng rng(seed);
    std::vector<double> dir(static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < n_points; ++i) {
        const double d = 0.5 * R * (1.0 - rng.uniform());  // delta in (0, R/2]
        const double dd = std::min(d, 0.5 * R * (1.0 - 1e-12));
        double norm = 0.0;
        for (auto& v : dir) {
            v = rng.normal();
            norm += v * v;
        }
        norm = std::sqrt(norm);
        geometry::Point x(ball->center);
        for (int j = 0; j < m; ++j) x[j] += (R - dd) * dir[j] / norm;
        const Estimate u = kernel::u_ball(shape, x, t);
        BoundReport r = make("pointwise_lemma", t, kernel::u_lower_lemma(shape, x, t), u,
                             kernel::u_upper_lemma(shape, x, t));
        r.t_other = dd;
        r.note = "delta=" + content::format_number(dd);
        r.recompute();
        out.push_back(r);
    }
    return out;
}

}  // namespace heatcontent::bounds
