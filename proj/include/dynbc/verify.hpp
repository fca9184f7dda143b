#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dynbc/datum.hpp"
#include "dynbc/montecarlo.hpp"
#include "dynbc/spectral.hpp"

namespace dynbc {

/// L1 approximation of the Caputo derivative of order alpha in (0, 1).
///
/// `times` must be a uniform grid starting anywhere, with at least 3 points;
/// the result has one entry per node t_j, j >= 1 (size - 1 entries).
/// Throws DomainError on a non-uniform grid.
std::vector<double> caputo_l1(std::span<const double> times, std::span<const double> values, double alpha);

/// Uniform grid 0, T/n, ..., T.
std::vector<double> uniform_grid(double T, int n);

struct ResidualReport {
    std::vector<double> grid;      // nodes at which residuals were taken
    double residual_max = 0.0;     // at step T / n_grid
    double residual_l2 = 0.0;
    double expected_order = 0.0;   // 2 - alpha
    double observed_order = 0.0;   // log2 of the max residual ratio for h and h/2
};

/// Max over nodes t in [T/2, T] of |D^alpha v + rate v| with
/// v(t) = E_{alpha,1}(-rate t^alpha) and D^alpha by caputo_l1 on n_grid steps.
double relaxation_residual(double alpha, double rate, double T, int n_grid);

/// Mode-wise residual of D^alpha v_n = -(lambda_n + Lambda) v_n for every
/// stored mode of `field`, at n_grid and 2 n_grid steps on [0, T].
/// The reported residuals use nodes in [T/2, T]: near t = 0 the relaxation
/// t -> E_alpha(-rate t^alpha) is not C^2 and the first-node error does not
/// decrease with h. Throws PreconditionError if some rate is negative.
ResidualReport residual_check(const SpectralField& field, const BoundaryParams& bp, double alpha, double T,
                              int n_grid);

/// Kolmogorov-Smirnov distance sup |F_n - F|. Needs >= 100 finite samples.
double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf);

/// Asymptotic 1% critical value 1.63 / sqrt(n).
inline double ks_critical_1pct(std::size_t n) { return 1.63 / std::sqrt(static_cast<double>(n)); }

struct ComparisonPoint {
    double t = 0.0;
    Point x{};
    double u_spectral = 0.0;
    double u_mc = 0.0;
    double std_error = 0.0;
    /// (u_mc - u_spectral) / std_error; empty when std_error = 0.
    std::optional<double> z;
    /// For std_error = 0: the two routes agree to rounding (1e-12 relative).
    bool exact_ok = true;
};

struct ComparisonReport {
    std::vector<ComparisonPoint> points;
    double max_abs_z = 0.0;
    bool passed = true;
};

struct CompareOptions {
    int n_max = 16;
    double z_threshold = 4.0;
};

/// Evaluates the spectral and Monte Carlo routes on times x points
/// (time-major order) with the same seed at every point.
ComparisonReport compare(const DomainSpec& dom, const BoundaryParams& bp, const BoundaryDatum& datum,
                         std::span<const double> times, std::span<const Point> points, const MCConfig& mc,
                         const CompareOptions& opts = {});

/// `t,x1,x2,u_spectral,u_mc,stderr,z` rows with 17 significant digits;
/// an undefined z is written as an empty field.
std::string comparison_csv(const ComparisonReport& report);

}  // namespace dynbc
