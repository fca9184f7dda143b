#pragma once

#include <span>
#include <vector>

#include "dynbc/domain.hpp"
#include "dynbc/rng.hpp"

namespace dynbc {

/// A point of the boundary Gamma. `position` lies exactly on the sphere of
/// radius R; on the circle `angle` is the polar angle in [0, 2 pi).
struct BoundaryPoint {
    Point position{};
    double angle = 0.0;

    static BoundaryPoint on_circle(double angle, double radius);
    /// Projects `direction` radially onto the sphere of the given radius.
    static BoundaryPoint on_sphere(const Point& direction, double radius);
};

/// Standard one-sided alpha-stable variate, E[exp(-lam S)] = exp(-lam^alpha),
/// by the Chambers-Mallows-Stuck / Kanter transformation of one uniform on
/// (0, pi) and one unit exponential. alpha in (0, 1).
double sample_stable(RngStream& rng, double alpha);

/// Inverse stable subordinator at a single time: L_t = (t / S)^alpha.
/// alpha = 1 returns t and t = 0 returns 0, both without consuming randomness.
double sample_inverse_stable(RngStream& rng, double alpha, double t);

/// One increment over a step `dt` of the tempered-stable subordinator with
/// Phi(lam) = (lam + theta)^alpha - theta^alpha (exact, by rejection from the
/// stable proposal dt^{1/alpha} S with acceptance exp(-theta x)).
double sample_tempered_increment(RngStream& rng, double alpha, double theta, double dt);

/// Inverse tempered-stable subordinator at time t: H is simulated on the
/// grid {delta, 2 delta, ...} and the first-passage index is linearly
/// interpolated. The error in L_t is at most delta.
double sample_inverse_tempered(RngStream& rng, double alpha, double theta, double t, double delta);

/// L at several nondecreasing times from one shared subordinator path;
/// the result is nondecreasing.
std::vector<double> sample_inverse_tempered_path(RngStream& rng, double alpha, double theta,
                                                 std::span<const double> times, double delta);

/// Wrapped-Cauchy deviation with mean resultant length rho in [0, 1), by the
/// tan-half-angle inverse CDF. Result in (-pi, pi).
double sample_wrapped_cauchy(RngStream& rng, double rho);

/// Exit point of Brownian motion started at the interior point x (exact
/// Poisson-kernel sampling). x = 0 gives the uniform law on Gamma.
BoundaryPoint sample_exit_point(RngStream& rng, const DomainSpec& dom, const Point& x);

/// Boundary Levy process on the circle after intrinsic time s:
/// angle += N(0, 2 l s / R^2) + wrapped Cauchy with scale |k| s / R.
/// Requires dim 2 and k <= 0; s = 0 returns y0 unchanged.
BoundaryPoint sample_boundary_process(RngStream& rng, const DomainSpec& dom, const BoundaryParams& bp,
                                      const BoundaryPoint& y0, double s);

}  // namespace dynbc
