#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dynbc/domain.hpp"
#include "dynbc/symbols.hpp"

namespace dynbc {

/// Eigenvalue of the Dirichlet-to-Neumann map for boundary degree d: d / R.
double dn_symbol(const DomainSpec& dom, int degree);
/// Eigenvalue of -Delta_Gamma: d^2/R^2 on the circle, d(d+1)/R^2 on the sphere.
double lb_symbol(const DomainSpec& dom, int degree);

/// lambda(mode) + Lambda with lambda = -k d/R + l * lb_symbol(d).
double eigenvalue(const DomainSpec& dom, const BoundaryParams& bp, const ModeIndex& mode);
double eigenvalue_for_degree(const DomainSpec& dom, const BoundaryParams& bp, int degree);

struct SpectralCondition {
    bool ok = false;                 // lambda_1 >= 0, computed from the explicit eigenvalues
    double first_eigenvalue = 0.0;   // lambda_1 with Lambda = 0
    bool radius_formula_ok = false;  // the textbook sufficient condition k <= l R (N - 1)
    bool discrepancy = false;        // the two tests disagree
    std::string warning;             // non-empty when discrepancy
};

/// lambda_1 >= 0 test on the degree-1 modes (Lambda ignored). The explicit
/// eigenvalue is authoritative; a disagreement with k <= l R (N-1) is
/// reported in `warning`.
SpectralCondition check_spectral_condition(const DomainSpec& dom, const BoundaryParams& bp);

/// Orthonormal real boundary eigenfunction phi_mode at a boundary point y
/// (only the direction of y is used). Arclength / surface measure on the
/// radius-R boundary.
double boundary_basis(const DomainSpec& dom, const ModeIndex& mode, const Point& y);
/// sup over Gamma of |phi_mode|.
double basis_sup(const DomainSpec& dom, const ModeIndex& mode);

/// (r/R)^d phi_mode(direction of x) for |x| <= R.
double harmonic_extension(const DomainSpec& dom, const ModeIndex& mode, const Point& x);

/// Every basis index of degree <= n_max on `dom`, ordered by degree.
std::vector<ModeIndex> modes_up_to(const DomainSpec& dom, int n_max);

/// Truncated eigen-expansion <u0, phi_mode> of a boundary datum.
class SpectralField {
public:
    SpectralField(DomainSpec dom, int n_max, std::map<ModeIndex, double> coefficients,
                  double grid_residual = 0.0);

    const DomainSpec& domain() const noexcept { return dom_; }
    int n_max() const noexcept { return n_max_; }
    const std::map<ModeIndex, double>& coefficients() const noexcept { return coeffs_; }
    double coefficient(const ModeIndex& mode) const;

    /// Relative discrete L2 misfit between the samples and the truncated
    /// expansion on the projection grid; zero for band-limited data.
    double grid_residual() const noexcept { return grid_residual_; }
    /// Samples carry content the grid cannot resolve below degree n_max.
    bool aliased(double tol = 1e-8) const noexcept { return grid_residual_ > tol; }

    double l2_norm() const;
    /// sum_mode c_mode phi_mode(y)
    double boundary_value(const Point& y) const;
    /// Same coefficients multiplied by `factor`.
    SpectralField scaled(double factor) const;

private:
    DomainSpec dom_;
    int n_max_;
    std::map<ModeIndex, double> coeffs_;
    double grid_residual_;
};

/// Uniform angles 2 pi j / G, as boundary points of radius R.
std::vector<Point> circle_grid(const DomainSpec& dom, int G);

/// Gauss-Legendre colatitudes x uniform longitudes on the sphere.
struct SphereGrid {
    int n_lat = 0;
    int n_lon = 0;
    std::vector<double> colatitudes;  // decreasing cos, i.e. increasing colatitude
    std::vector<double> lat_weights;  // Gauss-Legendre weights in cos(colatitude)

    static SphereGrid make(int n_lat, int n_lon);
    /// Smallest grid integrating degree-n_max products exactly.
    static SphereGrid for_degree(int n_max);
    double longitude(int j) const;
    /// Row-major (colatitude, longitude) points on the radius-R sphere.
    std::vector<Point> points(double radius) const;
};

/// Project samples on the uniform circle grid (G = samples.size() >= 2 n_max + 2).
SpectralField project_circle(const DomainSpec& dom, std::span<const double> samples, int n_max);

/// Project samples given row-major on `grid` (n_lat >= n_max + 1, n_lon >= 2 n_max + 2).
SpectralField project_sphere(const DomainSpec& dom, const SphereGrid& grid, std::span<const double> samples,
                             int n_max);

/// Samples `u0` on an oversampled grid and projects it.
SpectralField project_function(const DomainSpec& dom, const std::function<double(const Point&)>& u0, int n_max,
                               int oversample = 4);

/// Series solution u(t, x) = sum_mode c * w(t, lambda + Lambda) * psi_mode(x), with
/// w = E_{alpha,1}(-t^alpha .) (Caputo) or M_Phi(t, .) (general symbol).
///
/// `eps` > 0 drops degrees beyond truncation_bound(..., eps); eps = 0 keeps
/// every stored mode. Throws PreconditionError when some retained mode has
/// lambda + Lambda < 0 (degrees 1..n_max), DomainError for t < 0 or x outside the closed domain.
double evaluate_solution(const SpectralField& field, const BoundaryParams& bp, const TimeModel& model, double t,
                         const Point& x, double eps = 0.0);

/// Smallest degree D whose tail sum_{deg > D} |c| sup|phi| w(t, lambda) is
/// below eps, with w = 1/(1 + t^alpha (lambda + Lambda)) for Caputo models
/// (an upper bound on E_{alpha,1}) and the exact relaxation for symbols.
/// Returns n_max at t = 0.
int truncation_bound(const SpectralField& field, const BoundaryParams& bp, const TimeModel& model, double t,
                     double eps);

struct SubordinationOptions {
    double tolerance = 1e-10;  // relative tolerance of the outer (s) quadrature
    int max_depth = 15;
    int angular_nodes = 64;    // Gauss-Legendre nodes in the stable density
};

/// u(t, x) = int_0^inf w(s, x) P(L_t in ds), with w the alpha = 1 solution
/// and the inverse-stable density from the Zolotarev integral. alpha = 1
/// and t = 0 return w(t, x).
double subordinated_solution(const SpectralField& field, const BoundaryParams& bp, double alpha, double t,
                             const Point& x, const SubordinationOptions& opts = {});

}  // namespace dynbc
