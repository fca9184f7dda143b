#pragma once

#include <complex>
#include <variant>

namespace dynbc {

/// Order alpha of the fractional time derivative, 0 < alpha <= 1.
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);

    double value() const noexcept { return alpha_; }
    bool is_one() const noexcept { return alpha_ == 1.0; }

private:
    double alpha_;
};

struct Stable {
    FractionalOrder alpha;
};

struct TemperedStable {
    FractionalOrder alpha;
    double theta;  // tempering rate, > 0
};

/// Laplace exponent of a subordinator: Phi(lam) = lam^a (stable) or
/// (lam + theta)^a - theta^a (tempered stable).
class BernsteinSymbol {
public:
    static BernsteinSymbol stable(double alpha);
    static BernsteinSymbol tempered(double alpha, double theta);

    double alpha() const noexcept;
    bool is_stable() const noexcept { return std::holds_alternative<Stable>(variant_); }
    /// Tempering rate; 0 for the stable symbol.
    double theta() const noexcept;

    double operator()(double lam) const;
    std::complex<double> operator()(std::complex<double> s) const;

    const std::variant<Stable, TemperedStable>& variant() const noexcept { return variant_; }

private:
    explicit BernsteinSymbol(std::variant<Stable, TemperedStable> v) : variant_(v) {}
    std::variant<Stable, TemperedStable> variant_;
};

/// Phi(lam) for lam >= 0; Phi(0) = 0 exactly.
double phi_eval(const BernsteinSymbol& sym, double lam);

/// Tail kappa(t) = Pi(t, inf) of the Levy measure, t > 0.
/// Throws DomainError for alpha = 1: the derivative is then local and there
/// is no Levy measure.
double kappa_tail(const BernsteinSymbol& sym, double t);

/// M^Lambda_Phi(t, lam) = E_0[exp(-(lam + Lambda) L_t)] for the inverse
/// subordinator L of `sym`.
///
/// Stable symbols reduce to E_{alpha,1}(-(lam + Lambda) t^alpha); tempered
/// symbols invert the transform (Phi(s)/s) / (lam + Lambda + Phi(s)) by fixed
/// Talbot with 32 nodes. Requires lam + Lambda >= 0.
double m_phi(const BernsteinSymbol& sym, double Lambda, double lam, double t);

/// Caputo derivative of order alpha (equivalently the stable symbol).
struct Caputo {
    FractionalOrder alpha;
};

/// How the boundary evolves in time: Caputo(alpha) or a general symbol.
using TimeModel = std::variant<Caputo, BernsteinSymbol>;

/// Relaxation weight of a mode with total rate `rate` (= lambda + Lambda):
/// E_{alpha,1}(-rate t^alpha) or M_Phi(t, rate). Exactly 1 at t = 0.
double relaxation(const TimeModel& model, double rate, double t);

/// alpha of either model.
double model_alpha(const TimeModel& model) noexcept;

}  // namespace dynbc
