#pragma once

#include <memory>
#include <string>
#include <vector>

#include "dynbc/domain.hpp"
#include "dynbc/spectral.hpp"

namespace dynbc {

/// Boundary datum u0 shared by the spectral and Monte Carlo routes.
///
/// Named selectors:
///   constant:c        u0 = c
///   cos:n | sin:n     cos(n theta), sin(n theta) on the circle
///   basis:deg:m       the orthonormal eigenfunction ModeIndex{deg, m}
///   step              1 on the half of Gamma with first (circle) or third
///                     (sphere) coordinate > 0, else 0
///   mixed             1 + cos(theta) + 0.25 cos(3 theta) on the circle
/// Tabulated data come from CSV (`angle,value` on a uniform circle grid or
/// `colatitude,longitude,value` on a Gauss-Legendre x uniform sphere grid)
/// and are evaluated through their truncated expansion.
class BoundaryDatum {
public:
    static BoundaryDatum parse(const DomainSpec& dom, const std::string& selector);
    static BoundaryDatum from_csv(const DomainSpec& dom, const std::string& path, int n_max);

    static BoundaryDatum constant(const DomainSpec& dom, double c);
    static BoundaryDatum mode(const DomainSpec& dom, const ModeIndex& mode);

    double operator()(const Point& y) const;
    const std::string& name() const noexcept { return name_; }
    const DomainSpec& domain() const noexcept { return dom_; }

    /// Coefficients up to degree n_max. Named data are sampled on an
    /// oversampled grid, tabulated data projected from their own grid.
    SpectralField spectral(int n_max) const;

    /// u0 multiplied by c.
    BoundaryDatum scaled(double c) const;

private:
    enum class Kind { Constant, Cos, Sin, Basis, Step, Mixed, Table };

    BoundaryDatum(DomainSpec dom, Kind kind, std::string name) : dom_(dom), kind_(kind), name_(std::move(name)) {}

    DomainSpec dom_;
    Kind kind_;
    std::string name_;
    double scale_ = 1.0;
    double constant_ = 0.0;
    ModeIndex mode_{};
    int order_ = 0;
    // Table data: samples, optional sphere grid and the evaluation field.
    std::shared_ptr<const std::vector<double>> samples_;
    std::shared_ptr<const SphereGrid> grid_;
    std::shared_ptr<const SpectralField> field_;
};

}  // namespace dynbc
