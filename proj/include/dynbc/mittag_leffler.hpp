#pragma once

namespace dynbc {

/// Parameters (alpha, beta) of the two-parameter Mittag-Leffler function.
/// Construction enforces 0 < alpha <= 1 and beta > 0.
class MLParams {
public:
    MLParams(double alpha, double beta);

    double alpha() const noexcept { return alpha_; }
    double beta() const noexcept { return beta_; }

private:
    double alpha_;
    double beta_;
};

/// E_{alpha,beta}(z) for real z <= 0.
///
/// Absolute error below 1e-12 on [-1e6, 0]. Three regimes are used: the
/// power series for |z| <= 1, the algebraic asymptotic expansion for
/// |z| >= 50, and in between a real Hankel-contour integral (beta reduced
/// into (1 - alpha, 1] by the recurrence E_{a,b}(z) = 1/Gamma(b) + z E_{a,a+b}(z)).
/// alpha = 1 is closed form: exp(z) for beta = 1, 1F1(1; beta; z)/Gamma(beta) otherwise.
///
/// Throws DomainError for z > 0 or non-finite z.
double ml_e(const MLParams& params, double z);

/// Convenience overload; validates (alpha, beta) on every call.
double ml_e(double alpha, double beta, double z);

namespace detail {
// Exposed for regime-consistency tests.
double ml_series(double alpha, double beta, double z);
double ml_asymptotic(double alpha, double beta, double z, bool* converged);
double ml_hankel(double alpha, double beta, double z);
}  // namespace detail

}  // namespace dynbc
