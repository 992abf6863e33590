#ifndef HEATCONTENT_ESTIMATE_HPP
#define HEATCONTENT_ESTIMATE_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace heatcontent {

class Error : public std::runtime_error {
   public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad argument: wrong dimension, empty budget, malformed shape description.
class InvalidInput : public Error {
   public:
    explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

/// The shape does not satisfy the hypothesis an operation needs
/// (not R-smooth, infinite volume, unsupported kind).
class HypothesisError : public Error {
   public:
    explicit HypothesisError(const std::string& msg) : Error(msg) {}
};

enum class Method { closed_form, quadrature, monte_carlo };

std::string_view to_string(Method m);
Method method_from_string(std::string_view s);

/// A number with an error radius. The radius is either a certified bound
/// (closed form, quadrature) or three sample standard errors (Monte Carlo).
/// `infinite` marks a divergent quantity; value is then +inf and the radius 0.
struct Estimate {
    double value = 0.0;
    double error_radius = 0.0;
    Method method = Method::closed_form;
    std::uint64_t samples = 0;

    bool is_infinite() const { return value == std::numeric_limits<double>::infinity(); }
    double lower() const { return value - error_radius; }
    double upper() const { return value + error_radius; }

    static Estimate exact(double v) { return {v, 0.0, Method::closed_form, 0}; }
    static Estimate infinite(Method m = Method::closed_form) {
        return {std::numeric_limits<double>::infinity(), 0.0, m, 0};
    }
};

/// Linear combination a*x + b*y with radii added in absolute value.
Estimate combine(double a, const Estimate& x, double b, const Estimate& y);
Estimate scale(double a, const Estimate& x);

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace heatcontent

#endif
