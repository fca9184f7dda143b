#include "dynbc/mittag_leffler.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/hypergeometric_1F1.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "dynbc/error.hpp"
#include "dynbc/special.hpp"

namespace dynbc {

namespace {

constexpr double kSeriesRadius = 1.0;
constexpr double kAsymptoticRadius = 50.0;

// Kahan-compensated accumulator.
}  // namespace

MLParams::MLParams(double alpha, double beta) : alpha_(alpha), beta_(beta) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("Mittag-Leffler: alpha must lie in (0, 1], got " + std::to_string(alpha));
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw DomainError("Mittag-Leffler: beta must be positive, got " + std::to_string(beta));
}

namespace detail {

double ml_series(double alpha, double beta, double z) {
    CompensatedSum acc;
    double zk = 1.0;
    int small_run = 0;
    for (int k = 0; k < 20000; ++k) {
        const double term = zk * rgamma(alpha * k + beta);
        acc.add(term);
        // Gamma has its minimum near 1.46; stop only once terms are monotone.
        if (std::abs(term) <= 1e-17 * std::abs(acc.sum) && alpha * k + beta > 2.0) {
            if (++small_run >= 2) break;
        } else {
            small_run = 0;
        }
        zk *= z;
        if (zk == 0.0) break;
    }
    return acc.sum;
}

double ml_asymptotic(double alpha, double beta, double z, bool* converged) {
    // E_{a,b}(z) ~ -sum_{k>=1} z^{-k} / Gamma(b - a k),  z -> -inf, 0 < a < 1.
    // Termination uses the envelope |z|^{-k} Gamma(1 - b + a k) / pi, which
    // bounds |z^{-k}/Gamma(b - a k)| once b - a k < 0 and, unlike the terms
    // themselves, does not dip to zero near the poles of Gamma.
    CompensatedSum acc;
    const double x = -z;
    const double log_x = std::log(x);
    double zk = 1.0;
    double prev_env = std::numeric_limits<double>::infinity();
    bool ok = false;
    for (int k = 1; k < 2000; ++k) {
        zk /= z;
        const double arg = beta - alpha * k;
        acc.add(-zk * rgamma(arg));
        if (arg >= 0.0) continue;
        const double env = std::exp(-k * log_x + std::lgamma(1.0 - arg)) / std::numbers::pi;
        if (env <= 1e-17 * std::abs(acc.sum) || env < 1e-300) {
            ok = true;
            break;
        }
        if (env > prev_env) break;  // past the optimal truncation point
        prev_env = env;
    }
    if (converged != nullptr) *converged = ok;
    return acc.sum;
}

double ml_hankel(double alpha, double beta, double z) {
    // Collapse the Bromwich integral of s^{a-b}/(s^a + x) onto the negative
    // real axis (no poles on the principal sheet for a < 1), then substitute
    // r = u^{1/a}. Valid for 0 < a < 1 and b < 1 + a; used with b <= 1.
    const double x = -z;
    const double pa = std::numbers::pi * alpha;
    const double c = std::cos(pa);
    const double s = std::sin(pa);
    const double sb = std::sin(std::numbers::pi * beta);
    const double sab = std::sin(std::numbers::pi * (alpha - beta));
    const double power = (1.0 - beta) / alpha;
    const double inv_alpha = 1.0 / alpha;

    auto integrand = [&](double u) {
        if (u <= 0.0) return 0.0;
        const double damp = std::exp(-std::pow(u, inv_alpha));
        if (damp == 0.0) return 0.0;
        const double d1 = u + x * c;
        const double d2 = x * s;
        const double num = u * sb - x * sab;
        return damp * std::pow(u, power) * num / (d1 * d1 + d2 * d2);
    };

    // e^{-u^{1/a}} underflows beyond u = 745^a.
    const double cut = std::pow(745.0, alpha);
    std::vector<double> breaks{0.0};
    const double peak = -x * c;
    if (peak > 0.0 && peak < cut) breaks.push_back(peak);
    if (1.0 < cut) breaks.push_back(1.0);
    breaks.push_back(cut);
    std::sort(breaks.begin(), breaks.end());

    boost::math::quadrature::tanh_sinh<double> integrator(12);
    CompensatedSum acc;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] - breaks[i] <= 0.0) continue;
        acc.add(integrator.integrate(integrand, breaks[i], breaks[i + 1], 1e-15));
    }
    return acc.sum / (std::numbers::pi * alpha);
}

}  // namespace detail

namespace {

double ml_mid(double alpha, double beta, double z) {
    if (beta > 1.0) {
        // E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z; brings beta into (1-a, 1],
    // where the Hankel integrand has no endpoint singularity
        return (ml_mid(alpha, beta - alpha, z) - rgamma(beta - alpha)) / z;
    }
    return detail::ml_hankel(alpha, beta, z);
}

}  // namespace

double ml_e(const MLParams& params, double z) {
    if (!std::isfinite(z)) throw DomainError("Mittag-Leffler: argument must be finite");
    if (z > 0.0) throw DomainError("Mittag-Leffler: only z <= 0 is supported, got " + std::to_string(z));
    const double alpha = params.alpha();
    const double beta = params.beta();
    if (alpha == 1.0 && beta == 1.0) return std::exp(z);
    if (z == 0.0) return rgamma(beta);
    // E_{1,b}(z) = 1F1(1; b; z) / Gamma(b)
    if (alpha == 1.0) return boost::math::hypergeometric_1F1(1.0, beta, z) * rgamma(beta);
    const double x = -z;
    if (x <= kSeriesRadius) return detail::ml_series(alpha, beta, z);
    if (x >= kAsymptoticRadius) {
        bool converged = false;
        const double v = detail::ml_asymptotic(alpha, beta, z, &converged);
        if (converged) return v;
    }
    return ml_mid(alpha, beta, z);
}

double ml_e(double alpha, double beta, double z) { return ml_e(MLParams(alpha, beta), z); }

}  // namespace dynbc
