#include "dynbc/stable_density.hpp"

#include <cmath>
#include <numbers>

#include "dynbc/error.hpp"
#include "dynbc/special.hpp"

namespace dynbc {

namespace {

const GaussLegendre& rule_for(int nodes) {
    static const GaussLegendre rule64 = gauss_legendre(64);
    if (nodes == 64) return rule64;
    thread_local GaussLegendre other;
    if (static_cast<int>(other.nodes.size()) != nodes) other = gauss_legendre(nodes);
    return other;
}

}  // namespace

double kanter_a(double alpha, double phi) {
    const double b = 1.0 - alpha;
    return std::pow(std::sin(alpha * phi), alpha / b) * std::sin(b * phi) / std::pow(std::sin(phi), 1.0 / b);
}

double stable_density(double alpha, double y, int nodes) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("stable_density: alpha must lie in (0, 1)");
    if (!(y > 0.0)) return 0.0;
    const double b = 1.0 - alpha;
    const double c = std::pow(y, -alpha / b);
    const auto& rule = rule_for(nodes);
    double acc = 0.0;
    // phi = pi (1 - (1 - v)^2) clusters nodes at phi = pi, where the
    // integrand concentrates for large y.
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double v = 0.5 * (rule.nodes[i] + 1.0);
        const double phi = std::numbers::pi * (1.0 - (1.0 - v) * (1.0 - v));
        const double jac = 2.0 * std::numbers::pi * (1.0 - v);
        const double a = kanter_a(alpha, phi);
        const double e = std::exp(-a * c);
        if (e > 0.0) acc += rule.weights[i] * jac * a * e;
    }
    if (acc == 0.0) return 0.0;
    // dv = dx / 2, then the 1/pi prefactor
    acc *= 0.5 / std::numbers::pi;
    return alpha / b * std::pow(y, -1.0 / b) * acc;
}

double inverse_stable_density(double alpha, double t, double s, int nodes) {
    if (!(s > 0.0) || !(t > 0.0)) return 0.0;
    const double y = t * std::pow(s, -1.0 / alpha);
    return t / alpha * std::pow(s, -1.0 - 1.0 / alpha) * stable_density(alpha, y, nodes);
}

}  // namespace dynbc
