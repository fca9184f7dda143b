#include "dynbc/stoch.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "dynbc/error.hpp"

namespace dynbc {

namespace {

constexpr double pi = std::numbers::pi;

double wrap_angle(double a) {
    double r = std::fmod(a, 2.0 * pi);
    if (r < 0.0) r += 2.0 * pi;
    if (r >= 2.0 * pi) r = 0.0;
    return r;
}

void check_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in (0, 1]");
}

void check_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw DomainError("time must be finite and nonnegative");
}

}  // namespace

BoundaryPoint BoundaryPoint::on_circle(double angle, double radius) {
    BoundaryPoint p;
    p.angle = wrap_angle(angle);
    p.position = {radius * std::cos(p.angle), radius * std::sin(p.angle), 0.0};
    return p;
}

BoundaryPoint BoundaryPoint::on_sphere(const Point& direction, double radius) {
    const double n = std::hypot(direction[0], direction[1], direction[2]);
    if (!(n > 0.0)) throw DomainError("cannot project the origin onto the sphere");
    BoundaryPoint p;
    for (int i = 0; i < 3; ++i) p.position[i] = radius * direction[i] / n;
    p.angle = wrap_angle(std::atan2(direction[1], direction[0]));
    return p;
}

double sample_stable(RngStream& rng, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("stable sampler needs alpha in (0, 1)");
    const double u = pi * rng.uniform();
    const double e = rng.exponential();
    // S = sin(a u)/sin(u)^{1/a} * (sin((1-a) u)/E)^{(1-a)/a}
    const double lead = std::sin(alpha * u) / std::pow(std::sin(u), 1.0 / alpha);
    const double tail = std::pow(std::sin((1.0 - alpha) * u) / e, (1.0 - alpha) / alpha);
    return lead * tail;
}

double sample_inverse_stable(RngStream& rng, double alpha, double t) {
    check_alpha(alpha);
    check_time(t);
    if (alpha == 1.0 || t == 0.0) return t;
    const double s = sample_stable(rng, alpha);
    return std::pow(t / s, alpha);
}

double sample_tempered_increment(RngStream& rng, double alpha, double theta, double dt) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("tempered sampler needs alpha in (0, 1)");
    if (!(theta >= 0.0) || !std::isfinite(theta)) throw DomainError("theta must be finite and nonnegative");
    if (!(dt > 0.0)) throw DomainError("step must be positive");
    const double scale = std::pow(dt, 1.0 / alpha);
    for (;;) {
        const double x = scale * sample_stable(rng, alpha);
        if (theta == 0.0 || rng.uniform() <= std::exp(-theta * x)) return x;
    }
}

double sample_inverse_tempered(RngStream& rng, double alpha, double theta, double t, double delta) {
    const double times[1] = {t};
    return sample_inverse_tempered_path(rng, alpha, theta, times, delta)[0];
}

std::vector<double> sample_inverse_tempered_path(RngStream& rng, double alpha, double theta,
                                                 std::span<const double> times, double delta) {
    check_alpha(alpha);
    if (!(delta > 0.0) || !std::isfinite(delta)) throw DomainError("grid step must be positive");
    for (std::size_t i = 0; i < times.size(); ++i) {
        check_time(times[i]);
        if (i > 0 && times[i] < times[i - 1]) throw DomainError("times must be nondecreasing");
    }
    std::vector<double> out(times.size(), 0.0);
    if (alpha == 1.0) {
        // Phi(lam) = lam: the subordinator is the identity.
        std::copy(times.begin(), times.end(), out.begin());
        return out;
    }
    double h = 0.0;
    double steps = 0.0;
    std::size_t i = 0;
    while (i < times.size() && times[i] == 0.0) ++i;
    while (i < times.size()) {
        const double inc = sample_tempered_increment(rng, alpha, theta, delta);
        while (i < times.size() && h + inc > times[i]) {
            out[i] = delta * (steps + (times[i] - h) / inc);
            ++i;
        }
        h += inc;
        steps += 1.0;
    }
    return out;
}

double sample_wrapped_cauchy(RngStream& rng, double rho) {
    if (!(rho >= 0.0 && rho < 1.0)) throw DomainError("wrapped Cauchy needs rho in [0, 1)");
    const double u = rng.uniform();
    return 2.0 * std::atan((1.0 - rho) / (1.0 + rho) * std::tan(pi * (u - 0.5)));
}

BoundaryPoint sample_exit_point(RngStream& rng, const DomainSpec& dom, const Point& x) {
    const double R = dom.radius();
    const double r = dom.norm(x);
    if (!(r < R)) throw DomainError("exit point requires an interior starting point");
    const double rho = r / R;
    if (dom.dim() == 2) {
        const double centre = r > 0.0 ? std::atan2(x[1], x[0]) : 0.0;
        return BoundaryPoint::on_circle(centre + sample_wrapped_cauchy(rng, rho), R);
    }
    // Polar angle about x/|x| from the closed-form inverse CDF of the Poisson kernel.
    const double w = 2.0 * rng.uniform() - 1.0;
    const double d = 1.0 + rho * w;
    double u = (w + 0.5 * rho * (w * w + 3.0) + rho * rho * w + 0.5 * rho * rho * rho * (w * w - 1.0)) / (d * d);
    u = std::clamp(u, -1.0, 1.0);
    const double lon = 2.0 * pi * rng.uniform();

    Point e{0.0, 0.0, 1.0};
    if (r > 0.0) e = {x[0] / r, x[1] / r, x[2] / r};
    // Orthonormal frame (a, b) perpendicular to e.
    Point a = std::abs(e[0]) < 0.9 ? Point{1.0, 0.0, 0.0} : Point{0.0, 1.0, 0.0};
    const double proj = a[0] * e[0] + a[1] * e[1] + a[2] * e[2];
    for (int i = 0; i < 3; ++i) a[i] -= proj * e[i];
    const double an = std::hypot(a[0], a[1], a[2]);
    for (double& c : a) c /= an;
    const Point b{e[1] * a[2] - e[2] * a[1], e[2] * a[0] - e[0] * a[2], e[0] * a[1] - e[1] * a[0]};

    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    Point y{};
    for (int i = 0; i < 3; ++i) y[i] = u * e[i] + s * (std::cos(lon) * a[i] + std::sin(lon) * b[i]);
    return BoundaryPoint::on_sphere(y, R);
}

BoundaryPoint sample_boundary_process(RngStream& rng, const DomainSpec& dom, const BoundaryParams& bp,
                                      const BoundaryPoint& y0, double s) {
    bp.validate();
    if (dom.dim() != 2) throw PreconditionError("boundary process is only available on the circle");
    if (bp.k > 0.0) throw PreconditionError("k > 0: the boundary generator is not Markov-generating");
    check_time(s);
    if (s == 0.0) return y0;
    const double R = dom.radius();
    const double sigma = std::sqrt(2.0 * bp.l * s) / R;
    const double rho = std::exp(-std::abs(bp.k) * s / R);
    double angle = y0.angle + sigma * rng.normal();
    if (rho < 1.0) angle += sample_wrapped_cauchy(rng, rho);
    return BoundaryPoint::on_circle(angle, R);
}

}  // namespace dynbc
