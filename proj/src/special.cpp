#include "dynbc/special.hpp"

#include <cmath>
#include <numbers>

#include "dynbc/error.hpp"

namespace dynbc {

double rgamma(double x) {
    if (x <= 0.0 && x == std::floor(x)) return 0.0;
    // Gamma overflows past ~171.6; the reciprocal is then zero to double precision.
    if (x > 171.0) return 0.0;
    if (x < 0.5) {
        // reflection keeps the negative half-line accurate
        const double s = std::sin(std::numbers::pi * x);
        return s * std::tgamma(1.0 - x) / std::numbers::pi;
    }
    return 1.0 / std::tgamma(x);
}

GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: need at least one node");
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

}  // namespace dynbc
