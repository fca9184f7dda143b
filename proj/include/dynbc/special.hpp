#pragma once

#include <vector>

namespace dynbc {

/// 1/Gamma(x), returning exactly 0 at the poles x = 0, -1, -2, ...
double rgamma(double x);

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Legendre nodes/weights (Newton iteration on P_n).
GaussLegendre gauss_legendre(int n);

/// Kahan-compensated running sum.
struct CompensatedSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double v) {
        const double y = v - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
};

}  // namespace dynbc
