#include "dynbc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dynbc/error.hpp"
#include "dynbc/mittag_leffler.hpp"
#include "dynbc/special.hpp"

namespace dynbc {

namespace {

void check_fraction(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("L1 scheme needs alpha in (0, 1)");
}

// Residuals |D v + rate v| at nodes j >= 1 of uniform_grid(T, n).
std::vector<double> mode_residuals(double alpha, double rate, double T, int n) {
    const auto t = uniform_grid(T, n);
    std::vector<double> v(t.size());
    for (std::size_t j = 0; j < t.size(); ++j) v[j] = ml_e(alpha, 1.0, -rate * std::pow(t[j], alpha));
    const auto d = caputo_l1(t, v, alpha);
    std::vector<double> r(d.size());
    for (std::size_t j = 0; j < d.size(); ++j) r[j] = std::abs(d[j] + rate * v[j + 1]);
    return r;
}

double window_max(const std::vector<double>& r, int n) {
    double m = 0.0;
    for (int j = (n + 1) / 2; j <= n; ++j) m = std::max(m, r[j - 1]);
    return m;
}

}  // namespace

std::vector<double> uniform_grid(double T, int n) {
    if (!(T > 0.0) || n < 2) throw DomainError("uniform grid needs T > 0 and n >= 2");
    std::vector<double> t(n + 1);
    for (int j = 0; j <= n; ++j) t[j] = T * j / n;
    return t;
}

std::vector<double> caputo_l1(std::span<const double> times, std::span<const double> values, double alpha) {
    check_fraction(alpha);
    const std::size_t n = times.size();
    if (n < 3) throw DomainError("L1 scheme needs at least 3 grid points");
    if (values.size() != n) throw DomainError("times and values differ in length");
    const double h = (times[n - 1] - times[0]) / static_cast<double>(n - 1);
    if (!(h > 0.0)) throw DomainError("grid must be increasing");
    for (std::size_t j = 1; j < n; ++j)
        if (std::abs(times[j] - times[j - 1] - h) > 1e-9 * h) throw DomainError("L1 scheme needs a uniform grid");

    std::vector<double> b(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j)
        b[j] = std::pow(static_cast<double>(j + 1), 1.0 - alpha) - std::pow(static_cast<double>(j), 1.0 - alpha);
    const double scale = 1.0 / (std::tgamma(2.0 - alpha) * std::pow(h, alpha));

    std::vector<double> out(n - 1);
    for (std::size_t k = 1; k < n; ++k) {
        double acc = 0.0;
        for (std::size_t j = 0; j < k; ++j) acc += b[j] * (values[k - j] - values[k - j - 1]);
        out[k - 1] = scale * acc;
    }
    return out;
}

double relaxation_residual(double alpha, double rate, double T, int n_grid) {
    return window_max(mode_residuals(alpha, rate, T, n_grid), n_grid);
}

ResidualReport residual_check(const SpectralField& field, const BoundaryParams& bp, double alpha, double T,
                              int n_grid) {
    check_fraction(alpha);
    const auto& dom = field.domain();
    ResidualReport rep;
    rep.expected_order = 2.0 - alpha;
    const auto t = uniform_grid(T, n_grid);
    for (int j = (n_grid + 1) / 2; j <= n_grid; ++j) rep.grid.push_back(t[j]);

    double sq = 0.0;
    double coarse = 0.0;
    double fine = 0.0;
    for (const auto& [mode, c] : field.coefficients()) {
        const double rate = eigenvalue(dom, bp, mode) + bp.Lambda;
        if (rate < 0.0) throw PreconditionError("mode " + mode.label() + " has negative rate; spectral condition fails");
        if (c == 0.0) continue;
        const auto r = mode_residuals(alpha, rate, T, n_grid);
        for (int j = (n_grid + 1) / 2; j <= n_grid; ++j) {
            const double e = std::abs(c) * r[j - 1];
            coarse = std::max(coarse, e);
            sq += e * e;
        }
        fine = std::max(fine, std::abs(c) * relaxation_residual(alpha, rate, T, 2 * n_grid));
    }
    rep.residual_max = coarse;
    rep.residual_l2 = std::sqrt(sq);
    rep.observed_order = (coarse > 0.0 && fine > 0.0) ? std::log2(coarse / fine) : 0.0;
    return rep;
}

double ks_statistic(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.size() < 100) throw DomainError("KS statistic needs at least 100 samples");
    std::vector<double> s(samples.begin(), samples.end());
    for (double v : s)
        if (!std::isfinite(v)) throw DomainError("KS statistic: non-finite sample");
    std::sort(s.begin(), s.end());
    const double n = static_cast<double>(s.size());
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double f = cdf(s[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return std::clamp(d, 0.0, 1.0);
}

ComparisonReport compare(const DomainSpec& dom, const BoundaryParams& bp, const BoundaryDatum& datum,
                         std::span<const double> times, std::span<const Point> points, const MCConfig& mc,
                         const CompareOptions& opts) {
    mc.validate();
    const auto cond = check_spectral_condition(dom, bp);
    if (!cond.ok) throw PreconditionError("spectral condition fails: " + cond.warning);
    const SpectralField field = datum.spectral(opts.n_max);
    const BoundaryFunction u0 = [&datum](const Point& y) { return datum(y); };

    ComparisonReport rep;
    for (double t : times) {
        for (const Point& x : points) {
            ComparisonPoint p;
            p.t = t;
            p.x = x;
            p.u_spectral = evaluate_solution(field, bp, mc.time_model, t, x);
            const MCEstimate est = estimate_solution(dom, bp, u0, t, x, mc);
            p.u_mc = est.mean;
            p.std_error = est.std_error;
            if (est.std_error > 0.0) {
                p.z = (p.u_mc - p.u_spectral) / p.std_error;
                rep.max_abs_z = std::max(rep.max_abs_z, std::abs(*p.z));
                if (!(std::abs(*p.z) < opts.z_threshold)) rep.passed = false;
            } else {
                p.exact_ok = std::abs(p.u_mc - p.u_spectral) <= 1e-12 * std::max(1.0, std::abs(p.u_spectral));
                if (!p.exact_ok) rep.passed = false;
            }
            rep.points.push_back(p);
        }
    }
    return rep;
}

std::string comparison_csv(const ComparisonReport& report) {
    std::ostringstream out;
    out.precision(17);
    out << "t,x1,x2,u_spectral,u_mc,stderr,z\n";
    for (const auto& p : report.points) {
        out << p.t << ',' << p.x[0] << ',' << p.x[1] << ',' << p.u_spectral << ',' << p.u_mc << ',' << p.std_error
            << ',';
        if (p.z) out << *p.z;
        out << '\n';
    }
    return out.str();
}

}  // namespace dynbc
