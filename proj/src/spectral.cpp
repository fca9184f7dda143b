#include "dynbc/spectral.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dynbc/error.hpp"
#include "dynbc/special.hpp"
#include "dynbc/stable_density.hpp"

namespace dynbc {

namespace {

constexpr double kPi = std::numbers::pi;

struct SphericalAngles {
    double colatitude;
    double longitude;
};

SphericalAngles angles_of(const Point& y) {
    const double r = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2]);
    if (r == 0.0) return {0.0, 0.0};
    return {std::acos(std::clamp(y[2] / r, -1.0, 1.0)), std::atan2(y[1], y[0])};
}

double circle_basis(double R, int m, double theta) {
    if (m == 0) return 1.0 / std::sqrt(2.0 * kPi * R);
    const double norm = 1.0 / std::sqrt(kPi * R);
    return m > 0 ? norm * std::cos(m * theta) : norm * std::sin(-m * theta);
}

double sphere_basis(double R, int ell, int m, double colat, double lon) {
    const unsigned l = static_cast<unsigned>(ell);
    if (m == 0) return std::sph_legendre(l, 0u, colat) / R;
    const unsigned am = static_cast<unsigned>(std::abs(m));
    const double p = std::numbers::sqrt2 * std::sph_legendre(l, am, colat) / R;
    return m > 0 ? p * std::cos(am * lon) : p * std::sin(am * lon);
}

void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw DomainError(std::string(what) + " must be finite");
}

// Lowest lambda_d + Lambda over degrees 1..n_max (and Lambda itself).
void require_nonnegative_rates(const DomainSpec& dom, const BoundaryParams& bp, int n_max) {
    for (int d = 0; d <= n_max; ++d) {
        const double rate = eigenvalue_for_degree(dom, bp, d);
        if (rate < 0.0) {
            throw PreconditionError("spectral condition violated: lambda + Lambda = " + std::to_string(rate) +
                                    " < 0 at degree " + std::to_string(d));
        }
    }
}

double relative_misfit(std::span<const double> samples, const std::vector<double>& recon) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < samples.size(); ++j) {
        num += (samples[j] - recon[j]) * (samples[j] - recon[j]);
        den += samples[j] * samples[j];
    }
    if (den == 0.0) return 0.0;
    return std::sqrt(num / den);
}

}  // namespace

double dn_symbol(const DomainSpec& dom, int degree) { return degree / dom.radius(); }

double lb_symbol(const DomainSpec& dom, int degree) {
    const double R2 = dom.radius() * dom.radius();
    const double d = degree;
    return dom.dim() == 2 ? d * d / R2 : d * (d + 1.0) / R2;
}

double eigenvalue_for_degree(const DomainSpec& dom, const BoundaryParams& bp, int degree) {
    if (degree < 0) throw DomainError("mode degree must be >= 0");
    if (degree == 0) return bp.Lambda;
    return -bp.k * dn_symbol(dom, degree) + bp.l * lb_symbol(dom, degree) + bp.Lambda;
}

double eigenvalue(const DomainSpec& dom, const BoundaryParams& bp, const ModeIndex& mode) {
    mode.validate(dom);
    return eigenvalue_for_degree(dom, bp, mode.degree);
}

SpectralCondition check_spectral_condition(const DomainSpec& dom, const BoundaryParams& bp) {
    BoundaryParams no_kill = bp;
    no_kill.Lambda = 0.0;
    SpectralCondition out;
    out.first_eigenvalue = eigenvalue_for_degree(dom, no_kill, 1);
    out.ok = out.first_eigenvalue >= 0.0;
    out.radius_formula_ok = bp.k <= bp.l * dom.radius() * (dom.dim() - 1);
    out.discrepancy = out.ok != out.radius_formula_ok;
    if (out.discrepancy) {
        out.warning = "explicit lambda_1 = " + std::to_string(out.first_eigenvalue) +
                      (out.ok ? " >= 0" : " < 0") + " but k <= l R (N-1) is " +
                      (out.radius_formula_ok ? "satisfied" : "violated") +
                      "; using the explicit eigenvalue";
    }
    return out;
}

double boundary_basis(const DomainSpec& dom, const ModeIndex& mode, const Point& y) {
    mode.validate(dom);
    if (dom.dim() == 2) return circle_basis(dom.radius(), mode.m, std::atan2(y[1], y[0]));
    const auto a = angles_of(y);
    return sphere_basis(dom.radius(), mode.degree, mode.m, a.colatitude, a.longitude);
}

double basis_sup(const DomainSpec& dom, const ModeIndex& mode) {
    const double R = dom.radius();
    if (dom.dim() == 2) return mode.degree == 0 ? 1.0 / std::sqrt(2.0 * kPi * R) : 1.0 / std::sqrt(kPi * R);
    // addition theorem: sum_m Y_lm^2 = (2l+1)/(4 pi) on the unit sphere
    return std::sqrt((2.0 * mode.degree + 1.0) / (4.0 * kPi)) / R;
}

double harmonic_extension(const DomainSpec& dom, const ModeIndex& mode, const Point& x) {
    if (!dom.contains(x)) throw DomainError("harmonic_extension: point outside the closed domain");
    mode.validate(dom);
    const double r = dom.norm(x);
    if (mode.degree == 0) return boundary_basis(dom, mode, {dom.radius(), 0.0, 0.0});
    if (r == 0.0) return 0.0;
    return std::pow(std::min(r / dom.radius(), 1.0), mode.degree) * boundary_basis(dom, mode, x);
}

std::vector<ModeIndex> modes_up_to(const DomainSpec& dom, int n_max) {
    std::vector<ModeIndex> modes;
    for (int d = 0; d <= n_max; ++d) {
        if (dom.dim() == 2) {
            modes.push_back({d, d});
            if (d > 0) modes.push_back({d, -d});
        } else {
            for (int m = -d; m <= d; ++m) modes.push_back({d, m});
        }
    }
    return modes;
}

SpectralField::SpectralField(DomainSpec dom, int n_max, std::map<ModeIndex, double> coefficients,
                             double grid_residual)
    : dom_(dom), n_max_(n_max), coeffs_(std::move(coefficients)), grid_residual_(grid_residual) {
    if (n_max < 0) throw DomainError("n_max must be >= 0");
    for (const auto& [mode, c] : coeffs_) {
        mode.validate(dom_);
        if (mode.degree > n_max_) throw DomainError("coefficient " + mode.label() + " exceeds n_max");
        require_finite(c, "spectral coefficient");
    }
}

double SpectralField::coefficient(const ModeIndex& mode) const {
    const auto it = coeffs_.find(mode);
    return it == coeffs_.end() ? 0.0 : it->second;
}

double SpectralField::l2_norm() const {
    double s = 0.0;
    for (const auto& [mode, c] : coeffs_) s += c * c;
    return std::sqrt(s);
}

double SpectralField::boundary_value(const Point& y) const {
    double v = 0.0;
    for (const auto& [mode, c] : coeffs_) v += c * boundary_basis(dom_, mode, y);
    return v;
}

SpectralField SpectralField::scaled(double factor) const {
    auto c = coeffs_;
    for (auto& [mode, v] : c) v *= factor;
    return SpectralField(dom_, n_max_, std::move(c), grid_residual_);
}

std::vector<Point> circle_grid(const DomainSpec& dom, int G) {
    std::vector<Point> pts(G);
    for (int j = 0; j < G; ++j) {
        const double th = 2.0 * kPi * j / G;
        pts[j] = {dom.radius() * std::cos(th), dom.radius() * std::sin(th), 0.0};
    }
    return pts;
}

SphereGrid SphereGrid::make(int n_lat, int n_lon) {
    if (n_lat < 1 || n_lon < 1) throw DomainError("sphere grid needs at least one node per direction");
    const auto gl = gauss_legendre(n_lat);
    SphereGrid g;
    g.n_lat = n_lat;
    g.n_lon = n_lon;
    for (int i = 0; i < n_lat; ++i) {
        const int src = n_lat - 1 - i;  // descending cos
        g.colatitudes.push_back(std::acos(gl.nodes[src]));
        g.lat_weights.push_back(gl.weights[src]);
    }
    return g;
}

SphereGrid SphereGrid::for_degree(int n_max) { return make(n_max + 1, 2 * n_max + 2); }

double SphereGrid::longitude(int j) const { return 2.0 * kPi * j / n_lon; }

std::vector<Point> SphereGrid::points(double radius) const {
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(n_lat) * n_lon);
    for (int i = 0; i < n_lat; ++i) {
        const double st = std::sin(colatitudes[i]);
        const double ct = std::cos(colatitudes[i]);
        for (int j = 0; j < n_lon; ++j) {
            const double ph = longitude(j);
            pts.push_back({radius * st * std::cos(ph), radius * st * std::sin(ph), radius * ct});
        }
    }
    return pts;
}

namespace {

// A quadrature sum at the level of its own rounding error carries no signal.
bool below_rounding(double sum, double magnitude) {
    return std::abs(sum) <= 16.0 * std::numeric_limits<double>::epsilon() * magnitude;
}

}  // namespace

SpectralField project_circle(const DomainSpec& dom, std::span<const double> samples, int n_max) {
    if (dom.dim() != 2) throw DomainError("project_circle: domain is not a disk");
    if (n_max < 0) throw DomainError("n_max must be >= 0");
    const int G = static_cast<int>(samples.size());
    if (G < 2 * n_max + 2)
        throw DomainError("grid too coarse: " + std::to_string(G) + " samples for n_max = " + std::to_string(n_max) +
                          " (need >= " + std::to_string(2 * n_max + 2) + ")");
    for (double v : samples) require_finite(v, "boundary sample");

    const double R = dom.radius();
    const double ds = R * 2.0 * kPi / G;
    const auto modes = modes_up_to(dom, n_max);
    std::map<ModeIndex, double> coeffs;
    std::vector<double> recon(G, 0.0);
    for (const auto& mode : modes) {
        CompensatedSum acc;
        double mag = 0.0;
        for (int j = 0; j < G; ++j) {
            const double term = samples[j] * circle_basis(R, mode.m, 2.0 * kPi * j / G);
            acc.add(term);
            mag += std::abs(term);
        }
        double c = acc.sum;
        c = below_rounding(c, mag) ? 0.0 : c * ds;
        coeffs[mode] = c;
        for (int j = 0; j < G; ++j) recon[j] += c * circle_basis(R, mode.m, 2.0 * kPi * j / G);
    }
    return SpectralField(dom, n_max, std::move(coeffs), relative_misfit(samples, recon));
}

SpectralField project_sphere(const DomainSpec& dom, const SphereGrid& grid, std::span<const double> samples,
                             int n_max) {
    if (dom.dim() != 3) throw DomainError("project_sphere: domain is not a ball");
    if (n_max < 0) throw DomainError("n_max must be >= 0");
    if (grid.n_lat < n_max + 1 || grid.n_lon < 2 * n_max + 2)
        throw DomainError("grid too coarse for n_max = " + std::to_string(n_max) + " (need n_lat >= " +
                          std::to_string(n_max + 1) + ", n_lon >= " + std::to_string(2 * n_max + 2) + ")");
    if (samples.size() != static_cast<std::size_t>(grid.n_lat) * grid.n_lon)
        throw DomainError("sample count does not match the sphere grid");
    for (double v : samples) require_finite(v, "boundary sample");

    const double R = dom.radius();
    const double dphi = 2.0 * kPi / grid.n_lon;
    const auto modes = modes_up_to(dom, n_max);
    std::map<ModeIndex, double> coeffs;
    std::vector<double> recon(samples.size(), 0.0);
    std::vector<double> basis(samples.size());
    for (const auto& mode : modes) {
        CompensatedSum acc;
        double mag = 0.0;
        for (int i = 0; i < grid.n_lat; ++i) {
            for (int j = 0; j < grid.n_lon; ++j) {
                const std::size_t idx = static_cast<std::size_t>(i) * grid.n_lon + j;
                basis[idx] = sphere_basis(R, mode.degree, mode.m, grid.colatitudes[i], grid.longitude(j));
                const double term = samples[idx] * basis[idx] * grid.lat_weights[i];
                acc.add(term);
                mag += std::abs(term);
            }
        }
        double c = acc.sum;
        c = below_rounding(c, mag) ? 0.0 : c * dphi * R * R;
        coeffs[mode] = c;
        for (std::size_t idx = 0; idx < samples.size(); ++idx) recon[idx] += c * basis[idx];
    }
    return SpectralField(dom, n_max, std::move(coeffs), relative_misfit(samples, recon));
}

SpectralField project_function(const DomainSpec& dom, const std::function<double(const Point&)>& u0, int n_max,
                               int oversample) {
    oversample = std::max(oversample, 1);
    if (dom.dim() == 2) {
        const int G = std::max(64, oversample * (2 * n_max + 2));
        const auto pts = circle_grid(dom, G);
        std::vector<double> v(pts.size());
        std::transform(pts.begin(), pts.end(), v.begin(), u0);
        return project_circle(dom, v, n_max);
    }
    const int n_lat = std::max(16, oversample * (n_max + 1));
    const auto grid = SphereGrid::make(n_lat, 2 * n_lat);
    const auto pts = grid.points(dom.radius());
    std::vector<double> v(pts.size());
    std::transform(pts.begin(), pts.end(), v.begin(), u0);
    return project_sphere(dom, grid, v, n_max);
}

int truncation_bound(const SpectralField& field, const BoundaryParams& bp, const TimeModel& model, double t,
                     double eps) {
    if (!(t >= 0.0)) throw DomainError("truncation_bound: t must be >= 0");
    if (t == 0.0) return field.n_max();
    const auto& dom = field.domain();
    std::vector<double> mass(field.n_max() + 1, 0.0);
    for (const auto& [mode, c] : field.coefficients()) mass[mode.degree] += std::abs(c) * basis_sup(dom, mode);

    const bool caputo = std::holds_alternative<Caputo>(model);
    const double alpha = model_alpha(model);
    std::vector<double> tail(field.n_max() + 2, 0.0);
    for (int d = field.n_max(); d >= 0; --d) {
        double term = 0.0;
        if (mass[d] != 0.0) {
            const double rate = std::max(eigenvalue_for_degree(dom, bp, d), 0.0);
            const double w = caputo ? 1.0 / (1.0 + std::pow(t, alpha) * rate) : relaxation(model, rate, t);
            term = mass[d] * w;
        }
        tail[d] = tail[d + 1] + term;
    }
    // tail[d + 1] is the bound on everything above degree d
    for (int d = 0; d <= field.n_max(); ++d) {
        if (tail[d + 1] == 0.0 || tail[d + 1] < eps) return d;
    }
    return field.n_max();
}

double evaluate_solution(const SpectralField& field, const BoundaryParams& bp, const TimeModel& model, double t,
                         const Point& x, double eps) {
    bp.validate();
    require_finite(t, "time");
    if (t < 0.0) throw DomainError("evaluate_solution: t must be >= 0");
    for (double c : x) require_finite(c, "evaluation point");
    const auto& dom = field.domain();
    if (!dom.contains(x)) throw DomainError("evaluate_solution: point outside the closed domain");
    require_nonnegative_rates(dom, bp, field.n_max());

    const int top = eps > 0.0 ? truncation_bound(field, bp, model, t, eps) : field.n_max();
    double value = 0.0;
    int cached_degree = -1;
    double weight = 1.0;
    for (const auto& [mode, c] : field.coefficients()) {
        if (mode.degree > top) break;
        if (c == 0.0) continue;
        if (mode.degree != cached_degree) {
            weight = t == 0.0 ? 1.0 : relaxation(model, eigenvalue_for_degree(dom, bp, mode.degree), t);
            cached_degree = mode.degree;
        }
        value += c * weight * harmonic_extension(dom, mode, x);
    }
    return value;
}

double subordinated_solution(const SpectralField& field, const BoundaryParams& bp, double alpha, double t,
                             const Point& x, const SubordinationOptions& opts) {
    const FractionalOrder order(alpha);
    if (!(t >= 0.0)) throw DomainError("subordinated_solution: t must be >= 0");
    // L_0 = 0, so u(0, x) = w(0, x).
    if (order.is_one() || t == 0.0) return evaluate_solution(field, bp, Caputo{FractionalOrder(1.0)}, t, x);
    bp.validate();
    const auto& dom = field.domain();
    if (!dom.contains(x)) throw DomainError("subordinated_solution: point outside the closed domain");
    require_nonnegative_rates(dom, bp, field.n_max());

    // w(s, x) = sum_d A_d(x) exp(-rate_d s)
    std::vector<double> amplitude(field.n_max() + 1, 0.0);
    for (const auto& [mode, c] : field.coefficients()) amplitude[mode.degree] += c * harmonic_extension(dom, mode, x);
    std::vector<std::pair<double, double>> terms;
    for (int d = 0; d <= field.n_max(); ++d) {
        if (amplitude[d] != 0.0) terms.emplace_back(amplitude[d], eigenvalue_for_degree(dom, bp, d));
    }
    if (terms.empty()) return 0.0;

    auto integrand = [&](double s) {
        if (!(s > 0.0) || !std::isfinite(s)) return 0.0;
        double w = 0.0;
        for (const auto& [a, rate] : terms) w += a * std::exp(-rate * s);
        return w * inverse_stable_density(alpha, t, s, opts.angular_nodes);
    };
    double error = 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
        integrand, 0.0, std::numeric_limits<double>::infinity(), opts.max_depth, opts.tolerance, &error);
}

}  // namespace dynbc
