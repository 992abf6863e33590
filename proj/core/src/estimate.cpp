#include "heatcontent/estimate.hpp"

#include <algorithm>
#include <cmath>

namespace heatcontent {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::closed_form:
            return "closed_form";
        case Method::quadrature:
            return "quadrature";
        case Method::monte_carlo:
            return "monte_carlo";
    }
    return "unknown";
}

Method method_from_string(std::string_view s) {
    if (s == "closed_form") return Method::closed_form;
    if (s == "quadrature") return Method::quadrature;
    if (s == "monte_carlo") return Method::monte_carlo;
    throw InvalidInput("unknown method tag: " + std::string(s));
}

Estimate combine(double a, const Estimate& x, double b, const Estimate& y) {
    Estimate r;
    r.value = a * x.value + b * y.value;
    r.error_radius = std::abs(a) * x.error_radius + std::abs(b) * y.error_radius;
    r.method = std::max(x.method, y.method);
    r.samples = x.samples + y.samples;
    return r;
}

Estimate scale(double a, const Estimate& x) {
    return {a * x.value, std::abs(a) * x.error_radius, x.method, x.samples};
}

}  // namespace heatcontent
