#include "dynbc/symbols.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "dynbc/error.hpp"
#include "dynbc/mittag_leffler.hpp"
#include "dynbc/special.hpp"
#include "dynbc/talbot.hpp"

namespace dynbc {

namespace {

// Upper incomplete gamma Gamma(-a, x) for 0 < a < 1, x > 0.
double upper_gamma_negative(double a, double x) {
    if (x <= 1.0) {
        // Gamma(1-a, x) = -a Gamma(-a, x) + x^{-a} e^{-x}
        return (std::pow(x, -a) * std::exp(-x) - boost::math::tgamma(1.0 - a, x)) / a;
    }
    // Legendre continued fraction, modified Lentz.
    const double s = -a;
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x + s * std::log(x)) * h;
}

}  // namespace

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("fractional order must lie in (0, 1], got " + std::to_string(alpha));
}

BernsteinSymbol BernsteinSymbol::stable(double alpha) {
    return BernsteinSymbol(Stable{FractionalOrder(alpha)});
}

BernsteinSymbol BernsteinSymbol::tempered(double alpha, double theta) {
    if (!(theta > 0.0) || !std::isfinite(theta))
        throw DomainError("tempering rate theta must be positive, got " + std::to_string(theta));
    return BernsteinSymbol(TemperedStable{FractionalOrder(alpha), theta});
}

double BernsteinSymbol::alpha() const noexcept {
    return std::visit([](const auto& v) { return v.alpha.value(); }, variant_);
}

double BernsteinSymbol::theta() const noexcept {
    if (const auto* t = std::get_if<TemperedStable>(&variant_)) return t->theta;
    return 0.0;
}

double BernsteinSymbol::operator()(double lam) const {
    if (!(lam >= 0.0)) throw DomainError("Bernstein symbol: argument must be >= 0");
    if (lam == 0.0) return 0.0;
    const double a = alpha();
    if (is_stable()) return std::pow(lam, a);
    const double th = theta();
    if (a == 1.0) return lam;
    // (lam+th)^a - th^a without cancellation for lam << th
    return std::pow(th, a) * std::expm1(a * std::log1p(lam / th));
}

std::complex<double> BernsteinSymbol::operator()(std::complex<double> s) const {
    const double a = alpha();
    if (is_stable()) return std::pow(s, a);
    const double th = theta();
    return std::pow(s + th, a) - std::pow(th, a);
}

double phi_eval(const BernsteinSymbol& sym, double lam) { return sym(lam); }

double kappa_tail(const BernsteinSymbol& sym, double t) {
    if (!(t > 0.0)) throw DomainError("kappa_tail: t must be > 0");
    const double a = sym.alpha();
    if (a == 1.0)
        throw DomainError("kappa_tail: alpha = 1 has no Levy measure (local-time-derivative case)");
    if (sym.is_stable()) return std::pow(t, -a) * rgamma(1.0 - a);
    const double th = sym.theta();
    return a * rgamma(1.0 - a) * std::pow(th, a) * upper_gamma_negative(a, th * t);
}

double m_phi(const BernsteinSymbol& sym, double Lambda, double lam, double t) {
    const double rate = lam + Lambda;
    if (!(rate >= 0.0)) throw DomainError("m_phi: lam + Lambda must be >= 0");
    if (!(t >= 0.0)) throw DomainError("m_phi: t must be >= 0");
    if (t == 0.0 || rate == 0.0) return 1.0;
    const double a = sym.alpha();
    if (a == 1.0) return std::exp(-rate * t);
    if (sym.is_stable()) return ml_e(a, 1.0, -rate * std::pow(t, a));
    auto transform = [&](std::complex<double> s) {
        const auto phi = sym(s);
        return phi / s / (rate + phi);
    };
    return std::clamp(talbot_invert(transform, t, 32), 0.0, 1.0);
}

double relaxation(const TimeModel& model, double rate, double t) {
    if (t == 0.0) return 1.0;
    if (const auto* c = std::get_if<Caputo>(&model)) {
        if (!(rate >= 0.0)) throw DomainError("relaxation: rate must be >= 0");
        const double a = c->alpha.value();
        if (a == 1.0) return std::exp(-rate * t);
        return ml_e(a, 1.0, -rate * std::pow(t, a));
    }
    return m_phi(std::get<BernsteinSymbol>(model), 0.0, rate, t);
}

double model_alpha(const TimeModel& model) noexcept {
    if (const auto* c = std::get_if<Caputo>(&model)) return c->alpha.value();
    return std::get<BernsteinSymbol>(model).alpha();
}

}  // namespace dynbc
