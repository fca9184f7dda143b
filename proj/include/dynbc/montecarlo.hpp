#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "dynbc/domain.hpp"
#include "dynbc/stoch.hpp"
#include "dynbc/symbols.hpp"

namespace dynbc {

/// Boundary datum u0, evaluated at a point of Gamma.
using BoundaryFunction = std::function<double(const Point&)>;

struct MCConfig {
    std::uint64_t n_paths = 100000;
    std::uint64_t seed = 1;
    int n_shards = 1;
    TimeModel time_model = Caputo{FractionalOrder(0.5)};
    /// Grid step of the tempered subordinator; 0 selects 1e-3 t.
    double tempered_step = 0.0;
    /// Paths per random stream. Block b always uses stream (seed, b), so the
    /// result does not depend on n_shards.
    std::uint64_t block_size = 4096;

    /// Throws ConfigError on n_paths < 1, n_shards < 1, n_paths < n_shards,
    /// block_size < 1 or a negative step.
    void validate() const;
};

struct MCEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
    double ci95_lo = 0.0;
    double ci95_hi = 0.0;
};

/// One simulated path: the time change ell = L_t and the datum value u0(z)
/// at the terminal boundary point, before the exp(-Lambda ell) weight.
struct PathRecord {
    double ell = 0.0;
    double value = 0.0;
};

/// Draws L_t for the given time model. Caputo and stable symbols use the
/// exact single-time sampler; tempered symbols the grid-passage sampler with
/// step `tempered_step` (0 means 1e-3 t).
double sample_time_change(RngStream& rng, const TimeModel& model, double t, double tempered_step = 0.0);

/// Every path of estimate_solution, in path order. Lambda plays no part in
/// the simulation, only in the weights.
std::vector<PathRecord> simulate_paths(const DomainSpec& dom, const BoundaryParams& bp, const BoundaryFunction& u0,
                                       double t, const Point& x, const MCConfig& cfg);

/// As simulate_paths with ell = s fixed.
std::vector<PathRecord> simulate_paths_w(const DomainSpec& dom, const BoundaryParams& bp, const BoundaryFunction& u0,
                                         double s, const Point& x, const MCConfig& cfg);

/// Mean and standard error of exp(-Lambda ell) value over `records`,
/// accumulated block by block exactly as the estimators do.
MCEstimate summarize(std::span<const PathRecord> records, double Lambda, std::uint64_t block_size);

/// u(t, x) = E_x[exp(-Lambda L_t) u0(X^Gamma(L_t))] started from the exit
/// point of x (or from x itself on Gamma). Requires dim 2 and k <= 0.
MCEstimate estimate_solution(const DomainSpec& dom, const BoundaryParams& bp, const BoundaryFunction& u0, double t,
                             const Point& x, const MCConfig& cfg);

/// exp(-Lambda s) w(s, x): the same pipeline without the time change.
MCEstimate estimate_w(const DomainSpec& dom, const BoundaryParams& bp, const BoundaryFunction& u0, double s,
                      const Point& x, const MCConfig& cfg);

}  // namespace dynbc
