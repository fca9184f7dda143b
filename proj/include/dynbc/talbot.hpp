#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace dynbc {

/// Fixed-Talbot inversion of a Laplace transform F at time t > 0
/// (contour s(th) = r th (cot th + i), r = 2M / (5t)).
///
/// Suited to transforms of smooth, non-oscillating functions; with M = 32
/// in double precision the error is dominated by rounding amplified by
/// e^{rt} = e^{2M/5}, i.e. around 1e-10 relative.
template <typename Transform>
double talbot_invert(Transform&& transform, double t, int nodes = 32) {
    using cplx = std::complex<double>;
    const double r = 2.0 * nodes / (5.0 * t);
    double acc = 0.5 * std::exp(r * t) * std::real(transform(cplx(r, 0.0)));
    for (int k = 1; k < nodes; ++k) {
        const double th = k * std::numbers::pi / nodes;
        const double cot = std::cos(th) / std::sin(th);
        const cplx s(r * th * cot, r * th);
        const double sigma = th + (th * cot - 1.0) * cot;
        acc += std::real(std::exp(t * s) * transform(s) * cplx(1.0, sigma));
    }
    return acc * r / nodes;
}

}  // namespace dynbc
