#ifndef HEATCONTENT_GEOMETRY_HPP
#define HEATCONTENT_GEOMETRY_HPP

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "heatcontent/estimate.hpp"
#include "heatcontent/random.hpp"

namespace heatcontent::geometry {

using Point = std::vector<double>;

/// Open ball B(center; radius).
struct Ball {
    Point center;
    double radius = 1.0;
};

/// Open box prod_i (corner_i, corner_i + lengths_i). m = 1 gives an interval.
struct Box {
    std::vector<double> lengths;
    Point corner;
};

/// Open R-neighbourhood of the segment [start, end].
struct Stadium {
    Point start;
    Point end;
    double radius = 1.0;

    double length() const;
};

/// Horn {x_1 > 1, (x_2..x_m) in x_1^(-alpha) (0, scale)^(m-1)}.
struct Horn {
    int m = 2;
    double alpha = 1.0;
    double scale = 1.0;

    double exponent() const { return (m - 1) * alpha; }        // beta: cross-section decays like x^-beta
    double profile(double x1) const;                            // side of the cross-section cube at x1
    double section_measure() const;                             // H^{m-1}(Sigma) = scale^(m-1)
    bool finite_volume() const { return exponent() > 1.0; }
    bool finite_heat_content() const { return 2.0 * exponent() > 1.0; }
};

class Shape;

/// Members have pairwise disjoint closures; nested unions are flattened.
struct DisjointUnion {
    std::vector<Shape> members;
};

enum class Kind { ball, box, stadium, horn, disjoint_union };

class Shape {
   public:
    using Variant = std::variant<Ball, Box, Stadium, Horn, DisjointUnion>;

    static Shape ball(Point center, double radius);
    static Shape box(std::vector<double> lengths, Point corner = {});
    /// Canonicalises to a Ball when start == end.
    static Shape stadium(Point start, Point end, double radius);
    static Shape horn(int m, double alpha, double scale = 1.0);
    /// Throws InvalidInput unless members share a dimension, have finite
    /// volume and pairwise positive closure distance.
    static Shape disjoint_union(std::vector<Shape> members);

    int dimension() const { return m_; }
    Kind kind() const { return static_cast<Kind>(v_.index()); }
    const Variant& variant() const { return v_; }
    template <class T>
    const T* get_if() const {
        return std::get_if<T>(&v_);
    }
    bool finite_volume() const;

   private:
    Shape(Variant v, int m) : v_(std::move(v)), m_(m) {}
    Variant v_;
    int m_;
};

struct GeoSummary {
    double volume = 0.0;             // +inf for infinite-volume horns
    double perimeter = 0.0;          // H^{m-1}(boundary), may be +inf
    double diameter = 0.0;           // +inf for horns
    double smoothness_radius = 0.0;  // largest R with R-smooth boundary, 0 if none
    int component_count = 1;
    int dimension = 2;
};

/// D_r = {x in D : delta(x) > r}.
struct ParallelSet {
    Shape base;
    double depth = 0.0;

    bool contains(std::span<const double> x) const;
};

/// Volume of the unit ball in R^m.
double unit_ball_volume(int m);
/// |B(0; a) ∩ {y_1 > d}| in R^m.
double ball_halfspace_volume(int m, double a, double d);
/// |B(0; a) ∩ B(dist e_1; b)| in R^m.
double ball_intersection_volume(int m, double a, double b, double dist);
/// |B(0; a)| - |B(0; a) ∩ B(rho e_1; a)|, evaluated without cancellation.
double ball_self_overlap_deficit(int m, double a, double rho);

bool contains(const Shape& shape, std::span<const double> x);
/// Distance from x to the complement; 0 outside the shape.
double delta(const Shape& shape, std::span<const double> x);
/// Distance from x to the shape; 0 inside. For horns a lower bound (0).
double distance_to(const Shape& shape, std::span<const double> x);

/// Member of a union that contains x (the shape itself for non-unions).
const Shape& component_containing(const Shape& shape, std::span<const double> x);

/// mu_D(x;R) = |B(x;R) ∩ D|.
Estimate mu(const Shape& shape, std::span<const double> x, double radius, std::uint64_t samples,
            std::uint64_t seed);
/// nu_D(x;R) = |B(x;R) \ D|; finite-volume shapes only.
Estimate nu(const Shape& shape, std::span<const double> x, double radius, std::uint64_t samples,
            std::uint64_t seed);

/// ∫_D mu_D(x;R) dx; infinite for horns with alpha <= 1/(2(m-1)).
Estimate mu_integral(const Shape& shape, double radius, std::uint64_t samples, std::uint64_t seed);
/// ∫_D nu_D(x;R) dx; finite-volume shapes only.
Estimate nu_integral(const Shape& shape, double radius, std::uint64_t samples, std::uint64_t seed);

GeoSummary geo_summary(const Shape& shape);

/// Perimeter of the inner parallel set D_r for balls, stadiums and unions thereof.
double parallel_perimeter(const Shape& shape, double r);

/// Distance between the closures of two finite shapes.
double closure_gap(const Shape& a, const Shape& b);

/// Uniform point in a finite-volume shape.
void sample_uniform(const Shape& shape, Rng& rng, std::span<double> out);

struct Aabb {
    Point lo;
    Point hi;
};
Aabb bounding_box(const Shape& shape);

// Horn helpers.

/// ∫_a^b u^(-beta) du.
double power_integral(double beta, double a, double b);
/// |{x in horn : a < x_1 < b}|.
double horn_slab_volume(const Horn& horn, double a, double b);
/// Closed-form upper bound on ∫_{x_1 > X} mu(x;R) dx,
/// 2R (2beta-1)^(-1) (X-R)^(1-2beta) |Sigma|^2. Needs X > 1 + R.
double horn_mu_tail_bound(const Horn& horn, double radius, double x_cut);

struct Bracket {
    double lower = 0.0;
    double upper = 0.0;
    double quadrature_error = 0.0;
};
/// Two-sided bracket on ∫_{x_1 > X} mu(x;R) dx from cross-section containment:
/// the thin horn inside B(x;R) is sandwiched between two slabs in x_1.
Bracket horn_mu_tail_bracket(const Horn& horn, double radius, double x_cut);
/// Cut above which the horn section is thin relative to R (diam <= R/20).
double horn_thin_cut(const Horn& horn, double radius);

}  // namespace heatcontent::geometry

#endif
