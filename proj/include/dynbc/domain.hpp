#pragma once

#include <array>
#include <compare>
#include <string>

namespace dynbc {

/// Cartesian point; dimension-2 problems ignore the third component.
using Point = std::array<double, 3>;

/// Disk (dim 2) or ball (dim 3) of radius R centred at the origin.
class DomainSpec {
public:
    DomainSpec(int dim, double radius);

    static DomainSpec disk(double radius) { return {2, radius}; }
    static DomainSpec ball(double radius) { return {3, radius}; }

    int dim() const noexcept { return dim_; }
    double radius() const noexcept { return radius_; }

    double norm(const Point& x) const noexcept;
    /// |x| <= R up to a relative slack of 1e-12.
    bool contains(const Point& x) const noexcept;
    /// | |x| - R | <= 1e-12 R.
    bool on_boundary(const Point& x) const noexcept;

private:
    int dim_;
    double radius_;
};

/// Coefficients of -A_Lambda = k A_DN + l Delta_Gamma - Lambda I.
struct BoundaryParams {
    double k = 0.0;
    double l = 0.0;
    double Lambda = 0.0;

    /// Throws DomainError unless l >= 0, Lambda >= 0, everything finite, and
    /// l > 0 whenever k > 0.
    void validate() const;
};

enum class Parity { Cos, Sin };

/// Index of a real boundary eigenfunction.
///
/// The sign of `m` selects the real form: m > 0 cosine, m < 0 sine, m = 0
/// the axisymmetric one. On the circle |m| equals the degree (m = 0 only for
/// degree 0); on the sphere |m| <= degree.
struct ModeIndex {
    int degree = 0;
    int m = 0;

    static ModeIndex circle(int n, Parity parity);
    static ModeIndex sphere(int ell, int m);

    auto operator<=>(const ModeIndex&) const = default;

    /// Throws DomainError if the index is not a basis element on `dom`.
    void validate(const DomainSpec& dom) const;
    std::string label() const;
};

}  // namespace dynbc
