#include "heatcontent/geometry.hpp"

#include <algorithm>
#include <boost/math/special_functions/beta.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>

#include "heatcontent/monte_carlo.hpp"
#include "heatcontent/parallel.hpp"
#include "heatcontent/quadrature.hpp"

namespace heatcontent::geometry {

namespace {

constexpr double kPi = std::numbers::pi;

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double dist2(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

double point_segment_dist2(std::span<const double> x, std::span<const double> p,
                           std::span<const double> q) {
    double dd = 0.0;
    double proj = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = q[i] - p[i];
        dd += d * d;
        proj += (x[i] - p[i]) * d;
    }
    const double s = dd > 0.0 ? std::clamp(proj / dd, 0.0, 1.0) : 0.0;
    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double c = p[i] + s * (q[i] - p[i]) - x[i];
        r += c * c;
    }
    return r;
}

// Closest distance between segments [p1,q1] and [p2,q2] in R^m (Ericson's
// clamped parametric solution).
double segment_segment_dist(const Point& p1, const Point& q1, const Point& p2, const Point& q2) {
    const std::size_t m = p1.size();
    Point d1(m), d2(m), r(m);
    for (std::size_t i = 0; i < m; ++i) {
        d1[i] = q1[i] - p1[i];
        d2[i] = q2[i] - p2[i];
        r[i] = p1[i] - p2[i];
    }
    const double a = dot(d1, d1);
    const double e = dot(d2, d2);
    const double f = dot(d2, r);
    double s = 0.0;
    double t = 0.0;
    constexpr double eps = 1e-300;
    if (a <= eps && e <= eps) {
        s = t = 0.0;
    } else if (a <= eps) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = dot(d1, r);
        if (e <= eps) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = dot(d1, d2);
            const double denom = a * e - b * b;
            s = denom > 0.0 ? std::clamp((b * f - c * e) / denom, 0.0, 1.0) : 0.0;
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double c = (p1[i] + s * d1[i]) - (p2[i] + t * d2[i]);
        acc += c * c;
    }
    return std::sqrt(acc);
}

double box_point_dist2(const Box& b, std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lo = b.corner[i];
        const double hi = b.corner[i] + b.lengths[i];
        const double d = std::max({0.0, lo - x[i], x[i] - hi});
        s += d * d;
    }
    return s;
}

// Ball and Stadium both reduce to a capsule (segment plus radius).
struct Capsule {
    Point a;
    Point b;
    double r;
};

std::optional<Capsule> as_capsule(const Shape& s) {
    if (auto* ball = s.get_if<Ball>()) return Capsule{ball->center, ball->center, ball->radius};
    if (auto* st = s.get_if<Stadium>()) return Capsule{st->start, st->end, st->radius};
    return std::nullopt;
}

// Distance from a segment to a box: convex in the segment parameter.
double segment_box_dist(const Point& p, const Point& q, const Box& box) {
    const std::size_t m = p.size();
    Point y(m);
    auto at = [&](double s) {
        for (std::size_t i = 0; i < m; ++i) y[i] = p[i] + s * (q[i] - p[i]);
        return box_point_dist2(box, y);
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (at(m1) <= at(m2))
            hi = m2;
        else
            lo = m1;
    }
    return std::sqrt(std::min({at(0.5 * (lo + hi)), at(0.0), at(1.0)}));
}

// Vertex set plus radius whose Minkowski hull covers the shape: the farthest
// distance between two such sets is attained at vertices.
struct Hull {
    std::vector<Point> vertices;
    double radius;
};

Hull hull_of(const Shape& s) {
    if (auto c = as_capsule(s)) return {{c->a, c->b}, c->r};
    if (auto* box = s.get_if<Box>()) {
        const std::size_t m = box->lengths.size();
        Hull h{{}, 0.0};
        for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
            Point v(m);
            for (std::size_t i = 0; i < m; ++i)
                v[i] = box->corner[i] + (((mask >> i) & 1u) ? box->lengths[i] : 0.0);
            h.vertices.push_back(std::move(v));
        }
        return h;
    }
    throw InvalidInput("no hull for this shape kind");
}

double hull_far(const Hull& a, const Hull& b) {
    double best = 0.0;
    for (const auto& v : a.vertices)
        for (const auto& w : b.vertices) best = std::max(best, std::sqrt(dist2(v, w)));
    return best + a.radius + b.radius;
}

void require_dim(const Shape& s, std::span<const double> x) {
    if (static_cast<int>(x.size()) != s.dimension())
        throw InvalidInput("point has dimension " + std::to_string(x.size()) + ", shape has " +
                           std::to_string(s.dimension()));
}

// Distance from (u0, y), 0 < y < g(u0), to the region above the horn profile
// {(u, v) : u >= 1, v >= s u^-alpha}. The squared distance is strictly convex
// on the admissible range [u0, u*] with g(u*) = y; bisect its derivative.
double horn_profile_distance(const Horn& h, double u0, double y) {
    const double s = h.scale;
    const double a = h.alpha;
    auto g = [&](double u) { return s * std::pow(u, -a); };
    auto dg = [&](double u) { return -a * s * std::pow(u, -a - 1.0); };
    auto dh = [&](double u) { return (u - u0) + (g(u) - y) * dg(u); };
    double lo = u0;
    double hi = std::pow(s / y, 1.0 / a);
    if (!(hi > lo)) return 0.0;
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= 1e-12 || mid <= lo || mid >= hi) break;
        if (dh(mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double u = 0.5 * (lo + hi);
    return std::hypot(u - u0, g(u) - y);
}

bool box_contains(const Box& b, std::span<const double> x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (!(x[i] > b.corner[i] && x[i] < b.corner[i] + b.lengths[i])) return false;
    return true;
}

bool horn_contains(const Horn& h, std::span<const double> x) {
    if (!(x[0] > 1.0)) return false;
    const double side = h.profile(x[0]);
    for (std::size_t j = 1; j < x.size(); ++j)
        if (!(x[j] > 0.0 && x[j] < side)) return false;
    return true;
}

// |B(x;R) ∩ box| by inclusion-exclusion over face caps, valid when no two
// excluded half-spaces on different axes meet inside the ball.
std::optional<double> box_mu_exact(const Box& b, std::span<const double> x, double R) {
    const int m = static_cast<int>(x.size());
    if (m == 1) {
        const double lo = std::max(x[0] - R, b.corner[0]);
        const double hi = std::min(x[0] + R, b.corner[0] + b.lengths[0]);
        return std::max(0.0, hi - lo);
    }
    std::vector<double> depth;  // signed distance to each crossed face plane
    std::vector<int> axis;
    double excluded = 0.0;
    for (int i = 0; i < m; ++i) {
        const double dl = x[i] - b.corner[i];
        const double du = b.corner[i] + b.lengths[i] - x[i];
        for (double d : {dl, du}) {
            if (d < R) {
                depth.push_back(d);
                axis.push_back(i);
                excluded += ball_halfspace_volume(m, R, d);
            }
        }
    }
    for (std::size_t p = 0; p < depth.size(); ++p)
        for (std::size_t q = p + 1; q < depth.size(); ++q) {
            if (axis[p] == axis[q]) continue;  // opposite faces exclude disjoint half-spaces
            const double dp = std::max(0.0, depth[p]);
            const double dq = std::max(0.0, depth[q]);
            if (dp * dp + dq * dq < R * R) return std::nullopt;
        }
    const double full = unit_ball_volume(m) * std::pow(R, m);
    return std::max(0.0, full - excluded);
}

Estimate mu_monte_carlo(const Shape& shape, std::span<const double> x, double R, std::uint64_t samples,
                        std::uint64_t seed) {
    const int m = shape.dimension();
    const double full = unit_ball_volume(m) * std::pow(R, m);
    const Point center(x.begin(), x.end());
    const auto summary = mc_mean(samples, seed, m, [&](Rng& rng, std::span<double> y) {
        rng.in_ball(center, R, y);
        return contains(shape, y) ? 1.0 : 0.0;
    });
    return summary.to_estimate(full);
}

// ∫_{|z|<R, z>=0} prod_{i>=k} (L_i - z_i)_+ dz_k..dz_m, radius^2 = r2.
double box_covariogram_ball(const std::vector<double>& L, std::size_t k, double r2, double tol,
                            double* err) {
    const double c = std::min(std::sqrt(std::max(r2, 0.0)), L[k]);
    if (k + 1 == L.size()) return L[k] * c - 0.5 * c * c;
    auto f = [&](double z) { return (L[k] - z) * box_covariogram_ball(L, k + 1, r2 - z * z, tol, nullptr); };
    std::vector<double> pts = {0.0, c};
    const double kink2 = r2 - L[k + 1] * L[k + 1];
    if (kink2 > 0.0 && std::sqrt(kink2) < c) pts = {0.0, std::sqrt(kink2), c};
    quadrature::Options opts;
    opts.abs_tol = tol;
    opts.rel_tol = 1e-13;
    const auto res = quadrature::integrate(f, pts, opts);
    if (err) *err += res.error;
    return res.value;
}

Estimate box_mu_integral(const Box& b, double R) {
    const std::size_t m = b.lengths.size();
    double err = 0.0;
    const double v = std::ldexp(box_covariogram_ball(b.lengths, 0, R * R, 1e-13, &err), static_cast<int>(m));
    const double e = std::ldexp(err, static_cast<int>(m));
    return {v, e, m == 1 ? Method::closed_form : Method::quadrature, 0};
}

// Covariogram route for balls: ∫_{|z|<R} |B ∩ (B+z)| dz.
Estimate ball_mu_integral(int m, double a, double R) {
    const double area = m * unit_ball_volume(m);
    const double upper = std::min(R, 2.0 * a);
    auto f = [&](double rho) { return area * std::pow(rho, m - 1) * ball_intersection_volume(m, a, a, rho); };
    quadrature::Options opts;
    opts.abs_tol = 1e-13;
    opts.rel_tol = 1e-13;
    return quadrature::integrate(f, 0.0, upper, opts).to_estimate();
}

Estimate ball_nu_integral(int m, double a, double R) {
    const double area = m * unit_ball_volume(m);
    const double vol = unit_ball_volume(m) * std::pow(a, m);
    auto f = [&](double rho) { return area * std::pow(rho, m - 1) * ball_self_overlap_deficit(m, a, rho); };
    quadrature::Options opts;
    opts.abs_tol = 1e-13;
    opts.rel_tol = 1e-13;
    const double upper = std::min(R, 2.0 * a);
    Estimate e = quadrature::integrate(f, 0.0, upper, opts).to_estimate();
    if (R > 2.0 * a) e.value += vol * unit_ball_volume(m) * (std::pow(R, m) - std::pow(2.0 * a, m));
    return e;
}

// ∫_D (indicator of y in D or not) pair estimator.
Estimate pair_integral_mc(const Shape& shape, double R, std::uint64_t samples, std::uint64_t seed,
                          bool complement) {
    const int m = shape.dimension();
    const double vol = geo_summary(shape).volume;
    const double full = unit_ball_volume(m) * std::pow(R, m);
    const auto summary = mc_mean(samples, seed, 2 * m, [&](Rng& rng, std::span<double> buf) {
        auto x = buf.subspan(0, m);
        auto y = buf.subspan(m, m);
        sample_uniform(shape, rng, x);
        rng.in_ball(x, R, y);
        const bool in = contains(shape, y);
        return (in != complement) ? 1.0 : 0.0;
    });
    return summary.to_estimate(vol * full);
}

// Inverse-CDF draw of x_1 on [a, b] with density ∝ u^-beta.
double draw_power(double beta, double a, double b, double uni) {
    if (std::abs(beta - 1.0) < 1e-12) return a * std::pow(b / a, uni);
    const double e = 1.0 - beta;
    const double pa = std::pow(a, e);
    const double pb = std::pow(b, e);
    return std::pow(pa + uni * (pb - pa), 1.0 / e);
}

Estimate horn_mu_integral(const Horn& h, double R, std::uint64_t samples, std::uint64_t seed) {
    const int m = h.m;
    const double full = unit_ball_volume(m) * std::pow(R, m);
    const double x_cut = horn_thin_cut(h, R);
    const Bracket tail = horn_mu_tail_bracket(h, R, x_cut);

    // Head: stratified slices of x_1 in (1, x_cut).
    const double base_width = std::min(1.0, R / std::sqrt(8.0 * m));
    constexpr std::size_t kMaxSlices = 4096;
    std::size_t n_slices = static_cast<std::size_t>(std::ceil((x_cut - 1.0) / base_width));
    n_slices = std::clamp<std::size_t>(n_slices, 1, kMaxSlices);
    const double width = (x_cut - 1.0) / static_cast<double>(n_slices);
    const double S = h.section_measure();

    std::vector<double> vol(n_slices), weight(n_slices);
    double total_weight = 0.0;
    for (std::size_t k = 0; k < n_slices; ++k) {
        const double a = 1.0 + width * k;
        const double b = (k + 1 == n_slices) ? x_cut : a + width;
        vol[k] = horn_slab_volume(h, a, b);
        const double mu_cap = std::min(full, S * power_integral(h.exponent(), std::max(1.0, a - R), b + R));
        weight[k] = vol[k] * mu_cap;
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
    std::vector<double> mean(n_slices), var(n_slices);
    parallel_for(n_slices, [&](std::size_t k) {
        Rng rng(derive_seed(seed, k));
        const double a = 1.0 + width * k;
        const double b = (k + 1 == n_slices) ? x_cut : a + width;
        Point x(m), y(m);
        double hits = 0.0;
        for (std::uint64_t i = 0; i < alloc[k]; ++i) {
            x[0] = draw_power(h.exponent(), a, b, rng.uniform());
            const double side = h.profile(x[0]);
            for (int j = 1; j < m; ++j) x[j] = side * rng.uniform();
            rng.in_ball(x, R, y);
            if (horn_contains(h, y)) hits += 1.0;
        }
        const double n = static_cast<double>(alloc[k]);
        const double p = hits / n;
        mean[k] = p;
        var[k] = std::max(p * (1.0 - p) * n / (n - 1.0), 1.0 / n) / n;  // variance of the slice mean
    });
    double head = 0.0, head_var = 0.0;
    for (std::size_t k = 0; k < n_slices; ++k) {
        head += vol[k] * full * mean[k];
        head_var += std::pow(vol[k] * full, 2) * var[k];
    }
    const double tail_mid = 0.5 * (tail.lower + tail.upper);
    const double tail_half = 0.5 * (tail.upper - tail.lower) + tail.quadrature_error;
    return {head + tail_mid, kSigmaMultiplier * std::sqrt(head_var) + tail_half, Method::monte_carlo, used};
}

}  // namespace

double Stadium::length() const { return std::sqrt(dist2(start, end)); }

double Horn::profile(double x1) const { return scale * std::pow(x1, -alpha); }

double Horn::section_measure() const { return std::pow(scale, m - 1); }

Shape Shape::ball(Point center, double radius) {
    if (center.empty()) throw InvalidInput("ball center must have dimension >= 1");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidInput("ball radius must be positive");
    const int m = static_cast<int>(center.size());
    return Shape(Ball{std::move(center), radius}, m);
}

Shape Shape::box(std::vector<double> lengths, Point corner) {
    if (lengths.empty()) throw InvalidInput("box needs at least one side length");
    for (double l : lengths)
        if (!(l > 0.0) || !std::isfinite(l)) throw InvalidInput("box side lengths must be positive");
    if (corner.empty()) corner.assign(lengths.size(), 0.0);
    if (corner.size() != lengths.size()) throw InvalidInput("box corner and lengths differ in dimension");
    const int m = static_cast<int>(lengths.size());
    return Shape(Box{std::move(lengths), std::move(corner)}, m);
}

Shape Shape::stadium(Point start, Point end, double radius) {
    if (start.size() != end.size()) throw InvalidInput("stadium endpoints differ in dimension");
    if (start.size() < 2) throw InvalidInput("stadium needs dimension >= 2");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw InvalidInput("stadium radius must be positive");
    if (dist2(start, end) == 0.0) return ball(std::move(start), radius);
    const int m = static_cast<int>(start.size());
    return Shape(Stadium{std::move(start), std::move(end), radius}, m);
}

Shape Shape::horn(int m, double alpha, double scale) {
    if (m < 2) throw InvalidInput("horn needs dimension >= 2");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InvalidInput("horn alpha must be positive");
    if (!(scale > 0.0) || !std::isfinite(scale)) throw InvalidInput("horn scale must be positive");
    return Shape(Horn{m, alpha, scale}, m);
}

Shape Shape::disjoint_union(std::vector<Shape> members) {
    if (members.empty()) throw InvalidInput("union needs at least one member");
    std::vector<Shape> flat;
    for (auto& s : members) {
        if (auto* u = s.get_if<DisjointUnion>()) {
            flat.insert(flat.end(), u->members.begin(), u->members.end());
        } else {
            flat.push_back(std::move(s));
        }
    }
    const int m = flat.front().dimension();
    for (const auto& s : flat) {
        if (s.dimension() != m) throw InvalidInput("union members differ in dimension");
        if (s.kind() == Kind::horn) throw InvalidInput("horns cannot be union members");
    }
    for (std::size_t i = 0; i < flat.size(); ++i)
        for (std::size_t j = i + 1; j < flat.size(); ++j)
            if (!(closure_gap(flat[i], flat[j]) > 0.0))
                throw InvalidInput("union members " + std::to_string(i) + " and " + std::to_string(j) +
                                   " have intersecting closures");
    return Shape(DisjointUnion{std::move(flat)}, m);
}

bool Shape::finite_volume() const {
    if (auto* h = get_if<Horn>()) return h->finite_volume();
    return true;
}

bool ParallelSet::contains(std::span<const double> x) const {
    return geometry::contains(base, x) && delta(base, x) > depth;
}

double unit_ball_volume(int m) {
    return std::pow(kPi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

double ball_halfspace_volume(int m, double a, double d) {
    const double full = unit_ball_volume(m) * std::pow(a, m);
    if (d >= a) return 0.0;
    if (d <= -a) return full;
    const double x = (d * d) / (a * a);
    const double b = 0.5 * (m + 1);
    if (d >= 0.0) return 0.5 * full * boost::math::ibetac(0.5, b, x);
    return 0.5 * full * (1.0 + boost::math::ibeta(0.5, b, x));
}

double ball_intersection_volume(int m, double a, double b, double dist) {
    if (dist >= a + b) return 0.0;
    if (dist <= std::abs(a - b)) return unit_ball_volume(m) * std::pow(std::min(a, b), m);
    const double d1 = (dist * dist + a * a - b * b) / (2.0 * dist);
    return ball_halfspace_volume(m, a, d1) + ball_halfspace_volume(m, b, dist - d1);
}

double ball_self_overlap_deficit(int m, double a, double rho) {
    const double full = unit_ball_volume(m) * std::pow(a, m);
    if (rho >= 2.0 * a) return full;
    if (rho <= 0.0) return 0.0;
    const double w = rho / (2.0 * a);
    return full * boost::math::ibeta(0.5, 0.5 * (m + 1), w * w);
}

bool contains(const Shape& shape, std::span<const double> x) {
    require_dim(shape, x);
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                return dist2(x, s.center) < s.radius * s.radius;
            } else if constexpr (std::is_same_v<T, Box>) {
                return box_contains(s, x);
            } else if constexpr (std::is_same_v<T, Stadium>) {
                return point_segment_dist2(x, s.start, s.end) < s.radius * s.radius;
            } else if constexpr (std::is_same_v<T, Horn>) {
                return horn_contains(s, x);
            } else {
                for (const auto& member : s.members)
                    if (contains(member, x)) return true;
                return false;
            }
        },
        shape.variant());
}

double delta(const Shape& shape, std::span<const double> x) {
    if (!contains(shape, x)) return 0.0;
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                return s.radius - std::sqrt(dist2(x, s.center));
            } else if constexpr (std::is_same_v<T, Box>) {
                double d = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < x.size(); ++i)
                    d = std::min({d, x[i] - s.corner[i], s.corner[i] + s.lengths[i] - x[i]});
                return d;
            } else if constexpr (std::is_same_v<T, Stadium>) {
                return s.radius - std::sqrt(point_segment_dist2(x, s.start, s.end));
            } else if constexpr (std::is_same_v<T, Horn>) {
                double d = x[0] - 1.0;
                for (std::size_t j = 1; j < x.size(); ++j) {
                    d = std::min(d, x[j]);
                    d = std::min(d, horn_profile_distance(s, x[0], x[j]));
                }
                return d;
            } else {
                // Closures are disjoint, so the nearest complement point lies
                // on the boundary of the member containing x.
                return delta(component_containing(shape, x), x);
            }
        },
        shape.variant());
}

double distance_to(const Shape& shape, std::span<const double> x) {
    require_dim(shape, x);
    return std::visit(
        [&](const auto& s) -> double {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                return std::max(0.0, std::sqrt(dist2(x, s.center)) - s.radius);
            } else if constexpr (std::is_same_v<T, Box>) {
                return std::sqrt(box_point_dist2(s, x));
            } else if constexpr (std::is_same_v<T, Stadium>) {
                return std::max(0.0, std::sqrt(point_segment_dist2(x, s.start, s.end)) - s.radius);
            } else if constexpr (std::is_same_v<T, Horn>) {
                return 0.0;
            } else {
                double d = std::numeric_limits<double>::infinity();
                for (const auto& member : s.members) d = std::min(d, distance_to(member, x));
                return d;
            }
        },
        shape.variant());
}

const Shape& component_containing(const Shape& shape, std::span<const double> x) {
    if (auto* u = shape.get_if<DisjointUnion>()) {
        for (const auto& member : u->members)
            if (contains(member, x)) return member;
    }
    return shape;
}

Estimate mu(const Shape& shape, std::span<const double> x, double radius, std::uint64_t samples,
            std::uint64_t seed) {
    require_dim(shape, x);
    if (!(radius > 0.0)) throw InvalidInput("mu needs a positive radius");
    const int m = shape.dimension();
    const double full = unit_ball_volume(m) * std::pow(radius, m);
    if (auto* u = shape.get_if<DisjointUnion>()) {
        Estimate total = Estimate::exact(0.0);
        for (std::size_t i = 0; i < u->members.size(); ++i)
            total = combine(1.0, total, 1.0, mu(u->members[i], x, radius, samples, derive_seed(seed, i)));
        return total;
    }
    if (contains(shape, x) && delta(shape, x) >= radius) return Estimate::exact(full);
    if (distance_to(shape, x) >= radius) return Estimate::exact(0.0);
    if (auto* b = shape.get_if<Ball>())
        return Estimate::exact(ball_intersection_volume(m, b->radius, radius, std::sqrt(dist2(x, b->center))));
    if (auto* b = shape.get_if<Box>()) {
        if (auto v = box_mu_exact(*b, x, radius)) return Estimate::exact(*v);
    }
    return mu_monte_carlo(shape, x, radius, samples, seed);
}

Estimate nu(const Shape& shape, std::span<const double> x, double radius, std::uint64_t samples,
            std::uint64_t seed) {
    if (!shape.finite_volume()) throw HypothesisError("nu is defined for finite-volume shapes only");
    const double full = unit_ball_volume(shape.dimension()) * std::pow(radius, shape.dimension());
    const Estimate inside = mu(shape, x, radius, samples, seed);
    Estimate out = inside;
    out.value = std::max(0.0, full - inside.value);
    return out;
}

Estimate mu_integral(const Shape& shape, double radius, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw InvalidInput("empty sample budget");
    if (!(radius > 0.0)) throw InvalidInput("mu_integral needs a positive radius");
    if (auto* h = shape.get_if<Horn>()) {
        if (!h->finite_heat_content()) return Estimate::infinite(Method::closed_form);
        return horn_mu_integral(*h, radius, samples, seed);
    }
    if (auto* b = shape.get_if<Ball>()) return ball_mu_integral(shape.dimension(), b->radius, radius);
    if (auto* b = shape.get_if<Box>()) return box_mu_integral(*b, radius);
    return pair_integral_mc(shape, radius, samples, seed, false);
}

Estimate nu_integral(const Shape& shape, double radius, std::uint64_t samples, std::uint64_t seed) {
    if (samples == 0) throw InvalidInput("empty sample budget");
    if (!(radius > 0.0)) throw InvalidInput("nu_integral needs a positive radius");
    if (!shape.finite_volume()) throw HypothesisError("nu_integral is defined for finite-volume shapes only");
    const int m = shape.dimension();
    if (auto* b = shape.get_if<Ball>()) return ball_nu_integral(m, b->radius, radius);
    if (auto* b = shape.get_if<Box>()) {
        const double vol = geo_summary(shape).volume;
        const Estimate inner = box_mu_integral(*b, radius);
        return combine(1.0, Estimate::exact(vol * unit_ball_volume(m) * std::pow(radius, m)), -1.0, inner);
    }
    if (shape.kind() == Kind::horn) {
        // Finite-volume horn: ∫ nu = |D| |B_R| - ∫ mu.
        const double vol = geo_summary(shape).volume;
        const Estimate inner = mu_integral(shape, radius, samples, seed);
        return combine(1.0, Estimate::exact(vol * unit_ball_volume(m) * std::pow(radius, m)), -1.0, inner);
    }
    return pair_integral_mc(shape, radius, samples, seed, true);
}

GeoSummary geo_summary(const Shape& shape) {
    const int m = shape.dimension();
    GeoSummary g;
    g.dimension = m;
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Ball>) {
                g.volume = unit_ball_volume(m) * std::pow(s.radius, m);
                g.perimeter = m * unit_ball_volume(m) * std::pow(s.radius, m - 1);
                g.diameter = 2.0 * s.radius;
                g.smoothness_radius = m >= 2 ? s.radius : 0.0;
            } else if constexpr (std::is_same_v<T, Box>) {
                g.volume = std::accumulate(s.lengths.begin(), s.lengths.end(), 1.0, std::multiplies<>());
                g.perimeter = 0.0;
                for (std::size_t i = 0; i < s.lengths.size(); ++i) g.perimeter += 2.0 * g.volume / s.lengths[i];
                double d2 = 0.0;
                for (double l : s.lengths) d2 += l * l;
                g.diameter = std::sqrt(d2);
                g.smoothness_radius = 0.0;
            } else if constexpr (std::is_same_v<T, Stadium>) {
                const double L = s.length();
                const double R = s.radius;
                g.volume = unit_ball_volume(m) * std::pow(R, m) + unit_ball_volume(m - 1) * std::pow(R, m - 1) * L;
                g.perimeter = m * unit_ball_volume(m) * std::pow(R, m - 1) +
                              (m - 1) * unit_ball_volume(m - 1) * std::pow(R, m - 2) * L;
                g.diameter = L + 2.0 * R;
                g.smoothness_radius = R;
            } else if constexpr (std::is_same_v<T, Horn>) {
                const double beta = s.exponent();
                g.volume = s.finite_volume() ? s.section_measure() / (beta - 1.0) : kInf;
                // Flat faces x_j = 0 and curved faces x_j = profile each carry
                // ∫ profile^(m-2) dx_1, which is finite iff (m-2) alpha > 1.
                if ((m - 2) * s.alpha > 1.0) {
                    const double flat = std::pow(s.scale, m - 2) / ((m - 2) * s.alpha - 1.0);
                    auto curved = [&](double x) {
                        const double slope = s.alpha * s.scale * std::pow(x, -s.alpha - 1.0);
                        return std::pow(s.profile(x), m - 2) * std::sqrt(1.0 + slope * slope);
                    };
                    quadrature::Options opts;
                    opts.rel_tol = 1e-12;
                    const double q = 2.0 / ((m - 2) * s.alpha - 1.0);
                    const double curved_area = quadrature::integrate_power_tail(curved, 1.0, q, opts).value;
                    g.perimeter = s.section_measure() + (m - 1) * (flat + curved_area);
                } else {
                    g.perimeter = kInf;
                }
                g.diameter = kInf;
                g.smoothness_radius = 0.0;
            } else {
                g.volume = 0.0;
                g.perimeter = 0.0;
                g.component_count = 0;
                g.diameter = 0.0;
                double radius = kInf;
                double min_gap = kInf;
                std::vector<Hull> hulls;
                for (const auto& member : s.members) {
                    const GeoSummary ms = geo_summary(member);
                    g.volume += ms.volume;
                    g.perimeter += ms.perimeter;
                    g.component_count += ms.component_count;
                    g.diameter = std::max(g.diameter, ms.diameter);
                    radius = std::min(radius, ms.smoothness_radius);
                    hulls.push_back(hull_of(member));
                }
                for (std::size_t i = 0; i < s.members.size(); ++i)
                    for (std::size_t j = i + 1; j < s.members.size(); ++j) {
                        g.diameter = std::max(g.diameter, hull_far(hulls[i], hulls[j]));
                        min_gap = std::min(min_gap, closure_gap(s.members[i], s.members[j]));
                    }
                g.smoothness_radius = std::min(radius, 0.5 * min_gap);
            }
        },
        shape.variant());
    return g;
}

double parallel_perimeter(const Shape& shape, double r) {
    if (r < 0.0) throw InvalidInput("parallel set depth must be nonnegative");
    const GeoSummary g = geo_summary(shape);
    if (!(r < g.smoothness_radius))
        throw HypothesisError("parallel set depth must be below the smoothness radius");
    const int m = shape.dimension();
    if (auto* b = shape.get_if<Ball>()) return m * unit_ball_volume(m) * std::pow(b->radius - r, m - 1);
    if (auto* st = shape.get_if<Stadium>()) {
        const double rr = st->radius - r;
        return m * unit_ball_volume(m) * std::pow(rr, m - 1) +
               (m - 1) * unit_ball_volume(m - 1) * std::pow(rr, m - 2) * st->length();
    }
    if (auto* u = shape.get_if<DisjointUnion>()) {
        double total = 0.0;
        for (const auto& member : u->members) total += parallel_perimeter(member, r);
        return total;
    }
    throw HypothesisError("parallel perimeter is available for balls, stadiums and their unions");
}

double closure_gap(const Shape& a, const Shape& b) {
    const auto ca = as_capsule(a);
    const auto cb = as_capsule(b);
    if (ca && cb) return segment_segment_dist(ca->a, ca->b, cb->a, cb->b) - ca->r - cb->r;
    const Box* ba = a.get_if<Box>();
    const Box* bb = b.get_if<Box>();
    if (ba && bb) {
        double s = 0.0;
        for (std::size_t i = 0; i < ba->lengths.size(); ++i) {
            const double d = std::max({0.0, bb->corner[i] - (ba->corner[i] + ba->lengths[i]),
                                       ba->corner[i] - (bb->corner[i] + bb->lengths[i])});
            s += d * d;
        }
        if (s == 0.0) {
            // Touching or overlapping boxes: report overlap depth as a negative gap.
            double overlap = kInf;
            for (std::size_t i = 0; i < ba->lengths.size(); ++i)
                overlap = std::min(overlap, std::min(ba->corner[i] + ba->lengths[i], bb->corner[i] + bb->lengths[i]) -
                                                std::max(ba->corner[i], bb->corner[i]));
            return -overlap;
        }
        return std::sqrt(s);
    }
    if (ca && bb) return segment_box_dist(ca->a, ca->b, *bb) - ca->r;
    if (cb && ba) return segment_box_dist(cb->a, cb->b, *ba) - cb->r;
    if (a.kind() == Kind::disjoint_union || b.kind() == Kind::disjoint_union) {
        const Shape& u = a.kind() == Kind::disjoint_union ? a : b;
        const Shape& o = a.kind() == Kind::disjoint_union ? b : a;
        double gap = kInf;
        for (const auto& member : u.get_if<DisjointUnion>()->members) gap = std::min(gap, closure_gap(member, o));
        return gap;
    }
    throw InvalidInput("closure gap is defined for finite catalog shapes");
}

Aabb bounding_box(const Shape& shape) {
    const int m = shape.dimension();
    Aabb box{Point(m, kInf), Point(m, -kInf)};
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Horn>) {
                throw InvalidInput("horns are unbounded");
            } else if constexpr (std::is_same_v<T, DisjointUnion>) {
                for (const auto& member : s.members) {
                    const Aabb mb = bounding_box(member);
                    for (int i = 0; i < m; ++i) {
                        box.lo[i] = std::min(box.lo[i], mb.lo[i]);
                        box.hi[i] = std::max(box.hi[i], mb.hi[i]);
                    }
                }
            } else if constexpr (std::is_same_v<T, Box>) {
                for (int i = 0; i < m; ++i) {
                    box.lo[i] = s.corner[i];
                    box.hi[i] = s.corner[i] + s.lengths[i];
                }
            } else {
                const Hull h = hull_of(shape);
                for (const auto& v : h.vertices)
                    for (int i = 0; i < m; ++i) {
                        box.lo[i] = std::min(box.lo[i], v[i] - h.radius);
                        box.hi[i] = std::max(box.hi[i], v[i] + h.radius);
                    }
            }
        },
        shape.variant());
    return box;
}

void sample_uniform(const Shape& shape, Rng& rng, std::span<double> out) {
    if (auto* b = shape.get_if<Ball>()) {
        rng.in_ball(b->center, b->radius, out);
        return;
    }
    if (auto* b = shape.get_if<Box>()) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = b->corner[i] + b->lengths[i] * rng.uniform();
        return;
    }
    if (auto* u = shape.get_if<DisjointUnion>()) {
        double total = 0.0;
        for (const auto& member : u->members) total += geo_summary(member).volume;
        double pick = rng.uniform() * total;
        for (const auto& member : u->members) {
            pick -= geo_summary(member).volume;
            if (pick < 0.0) {
                sample_uniform(member, rng, out);
                return;
            }
        }
        sample_uniform(u->members.back(), rng, out);
        return;
    }
    if (shape.kind() == Kind::stadium) {
        const Aabb box = bounding_box(shape);
        for (;;) {
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = rng.uniform(box.lo[i], box.hi[i]);
            if (contains(shape, out)) return;
        }
    }
    throw HypothesisError("uniform sampling needs a bounded shape");
}

double power_integral(double beta, double a, double b) {
    if (!(b > a)) return 0.0;
    const double lr = std::log1p((b - a) / a);
    if (std::abs(1.0 - beta) < 1e-14) return lr;
    const double e = 1.0 - beta;
    return std::pow(a, e) * std::expm1(e * lr) / e;
}

double horn_slab_volume(const Horn& horn, double a, double b) {
    return horn.section_measure() * power_integral(horn.exponent(), a, b);
}

double horn_mu_tail_bound(const Horn& horn, double radius, double x_cut) {
    const double beta = horn.exponent();
    if (!(2.0 * beta > 1.0)) return kInf;
    if (!(x_cut > 1.0 + radius)) throw InvalidInput("tail cut must exceed 1 + R");
    const double S = horn.section_measure();
    return 2.0 * radius / (2.0 * beta - 1.0) * std::pow(x_cut - radius, 1.0 - 2.0 * beta) * S * S;
}

double horn_thin_cut(const Horn& horn, double radius) {
    constexpr double kThinRatio = 0.05;
    const double diam = horn.scale * std::sqrt(static_cast<double>(horn.m - 1));
    const double thin = std::pow(diam / (kThinRatio * radius), 1.0 / horn.alpha);
    return radius + std::max(1.0, thin) + 1.0;
}

Bracket horn_mu_tail_bracket(const Horn& horn, double radius, double x_cut) {
    if (!(x_cut > 1.0 + radius)) throw InvalidInput("tail cut must exceed 1 + R");
    const double beta = horn.exponent();
    if (!(2.0 * beta > 1.0)) return {kInf, kInf, 0.0};
    const double S = horn.section_measure();
    const double diam_coef = horn.scale * std::sqrt(static_cast<double>(horn.m - 1));
    auto upper = [&](double x) { return S * std::pow(x, -beta) * S * power_integral(beta, x - radius, x + radius); };
    auto lower = [&](double x) {
        const double d = diam_coef * std::pow(x - radius, -horn.alpha);
        const double h2 = radius * radius - d * d;
        if (h2 <= 0.0) return 0.0;
        const double hh = std::sqrt(h2);
        return S * std::pow(x, -beta) * S * power_integral(beta, x - hh, x + hh);
    };
    quadrature::Options opts;
    opts.abs_tol = 1e-14;
    opts.rel_tol = 1e-11;
    const double q = 2.0 / (2.0 * beta - 1.0);
    const auto up = quadrature::integrate_power_tail(upper, x_cut, q, opts);
    const auto lo = quadrature::integrate_power_tail(lower, x_cut, q, opts);
    return {lo.value, up.value, up.error + lo.error};
}

}  // namespace heatcontent::geometry
