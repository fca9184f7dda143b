#pragma once

namespace dynbc {

/// Density of the one-sided alpha-stable law with E[exp(-lam S)] = exp(-lam^alpha),
/// 0 < alpha < 1, from Zolotarev's single-integral (Kanter) representation
///
///   g(y) = alpha/(1-alpha) y^{-1/(1-alpha)} (1/pi) int_0^pi a(phi) exp(-a(phi) y^{-alpha/(1-alpha)}) dphi,
///   a(phi) = sin(alpha phi)^{alpha/(1-alpha)} sin((1-alpha) phi) / sin(phi)^{1/(1-alpha)},
///
/// integrated with an `nodes`-point Gauss-Legendre rule.
double stable_density(double alpha, double y, int nodes = 64);

/// Density of the inverse stable subordinator L_t at s > 0:
/// (t/alpha) s^{-1-1/alpha} g(t s^{-1/alpha}).
double inverse_stable_density(double alpha, double t, double s, int nodes = 64);

/// The Kanter function a(phi) above, shared with the CMS sampler.
double kanter_a(double alpha, double phi);

}  // namespace dynbc
