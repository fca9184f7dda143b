#include "dynbc/domain.hpp"

#include <cmath>
#include <cstdlib>

#include "dynbc/error.hpp"

namespace dynbc {

DomainSpec::DomainSpec(int dim, double radius) : dim_(dim), radius_(radius) {
    if (dim != 2 && dim != 3) throw DomainError("domain dimension must be 2 or 3");
    if (!(radius > 0.0) || !std::isfinite(radius)) throw DomainError("domain radius must be positive");
}

double DomainSpec::norm(const Point& x) const noexcept {
    const double z = dim_ == 3 ? x[2] : 0.0;
    return std::sqrt(x[0] * x[0] + x[1] * x[1] + z * z);
}

bool DomainSpec::contains(const Point& x) const noexcept { return norm(x) <= radius_ * (1.0 + 1e-12); }

bool DomainSpec::on_boundary(const Point& x) const noexcept {
    return std::abs(norm(x) - radius_) <= 1e-12 * radius_;
}

void BoundaryParams::validate() const {
    if (!std::isfinite(k) || !std::isfinite(l) || !std::isfinite(Lambda))
        throw DomainError("boundary parameters must be finite");
    if (l < 0.0) throw DomainError("boundary diffusion l must be >= 0");
    if (Lambda < 0.0) throw DomainError("killing rate Lambda must be >= 0");
    if (k > 0.0 && !(l > 0.0)) throw DomainError("k > 0 requires l > 0");
}

ModeIndex ModeIndex::circle(int n, Parity parity) {
    if (n < 0) throw DomainError("mode degree must be >= 0");
    if (n == 0 && parity == Parity::Sin) throw DomainError("mode (0, sin) does not exist");
    return {n, parity == Parity::Cos ? n : -n};
}

ModeIndex ModeIndex::sphere(int ell, int m) {
    ModeIndex mode{ell, m};
    mode.validate(DomainSpec::ball(1.0));
    return mode;
}

void ModeIndex::validate(const DomainSpec& dom) const {
    if (degree < 0) throw DomainError("mode degree must be >= 0");
    if (dom.dim() == 2) {
        if (std::abs(m) != degree) throw DomainError("circle mode must have |m| = degree");
    } else if (std::abs(m) > degree) {
        throw DomainError("sphere mode must have |m| <= degree");
    }
}

std::string ModeIndex::label() const { return "(" + std::to_string(degree) + "," + std::to_string(m) + ")"; }

}  // namespace dynbc
