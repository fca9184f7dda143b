#include "doctest.h"

#include <cmath>
#include <numbers>
#include <vector>

#include "dynbc/error.hpp"
#include "dynbc/mittag_leffler.hpp"
#include "dynbc/stoch.hpp"
#include "dynbc/symbols.hpp"
#include "dynbc/verify.hpp"

using namespace dynbc;

namespace {

constexpr double kPi = std::numbers::pi;

struct Stat {
    double mean;
    double se;
};

template <class F>
Stat sample_mean(int n, F&& draw) {
    double s = 0.0;
    double s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = draw();
        s += v;
        s2 += v * v;
    }
    const double m = s / n;
    return {m, std::sqrt(std::max(0.0, s2 / n - m * m) / (n - 1))};
}

// Angle increment in (-pi, pi].
double wrap_pm(double a) {
    double r = std::remainder(a, 2.0 * kPi);
    return r;
}

// CDF on (-pi, pi] of the boundary-process increment after time s.
double increment_cdf(double d, double R, double k, double l, double s) {
    double acc = (d + kPi) / (2.0 * kPi);
    for (int n = 1; n <= 400; ++n) {
        const double c = std::exp(-s * (l * n * n / (R * R) + std::abs(k) * n / R));
        if (c < 1e-17) break;
        acc += c * std::sin(n * d) / (kPi * n);
    }
    return acc;
}

}  // namespace

TEST_CASE("RngStream: reproducible and stream-separated") {
    RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    int same_c = 0;
    int same_d = 0;
    for (int i = 0; i < 1000; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x > 0.0);
        CHECK(x < 1.0);
        same_c += x == c.uniform();
        same_d += x == d.uniform();
    }
    CHECK(same_c == 0);
    CHECK(same_d == 0);
    CHECK(a.seed() == 42);
    CHECK(a.stream_id() == 7);
}

TEST_CASE("sample_stable: Laplace transform exp(-lam^alpha)") {
    RngStream rng(1, 0);
    const int n = 200000;
    for (double alpha : {0.3, 0.5, 0.8}) {
        for (double lam : {1.0, 2.0}) {
            bool positive = true;
            const Stat st = sample_mean(n, [&] {
                const double s = sample_stable(rng, alpha);
                positive = positive && s > 0.0;
                return std::exp(-lam * s);
            });
            CAPTURE(alpha);
            CAPTURE(lam);
            CHECK(positive);
            CHECK(std::abs(st.mean - std::exp(-std::pow(lam, alpha))) < 3.0 * st.se);
        }
    }
    CHECK_THROWS_AS(sample_stable(rng, 1.0), DomainError);
    CHECK_THROWS_AS(sample_stable(rng, 0.0), DomainError);
}

TEST_CASE("sample_inverse_stable: examples and law") {
    RngStream rng(2, 0);
    SUBCASE("alpha = 1 is deterministic and consumes nothing") {
        RngStream fresh(2, 0);
        CHECK(sample_inverse_stable(rng, 1.0, 0.7) == 0.7);
        CHECK(sample_inverse_stable(rng, 0.5, 0.0) == 0.0);
        CHECK(rng.uniform() == fresh.uniform());
    }
    SUBCASE("moments at alpha = 1/2, t = 1") {
        const int n = 200000;
        std::vector<double> ls(n);
        for (auto& l : ls) l = sample_inverse_stable(rng, 0.5, 1.0);
        std::size_t i = 0;
        const Stat lap = sample_mean(n, [&] { return std::exp(-ls[i++]); });
        CHECK(std::abs(lap.mean - 0.42758357615580700441) < 3.0 * lap.se);
        i = 0;
        const Stat m = sample_mean(n, [&] { return ls[i++]; });
        CHECK(std::abs(m.mean - 1.0 / std::tgamma(1.5)) < 3.0 * m.se);
        // L_t is half-normal with scale sqrt(2t) at alpha = 1/2.
        const double d = ks_statistic(ls, [](double s) { return std::erf(s / 2.0); });
        CHECK(d < ks_critical_1pct(ls.size()));
    }
    SUBCASE("mean t^alpha / Gamma(1 + alpha)") {
        for (double alpha : {0.3, 0.7}) {
            const Stat m = sample_mean(200000, [&] { return sample_inverse_stable(rng, alpha, 2.0); });
            CHECK(std::abs(m.mean - std::pow(2.0, alpha) / std::tgamma(1.0 + alpha)) < 3.0 * m.se);
        }
    }
}

TEST_CASE("sample_inverse_tempered") {
    RngStream rng(3, 0);
    CHECK(sample_inverse_tempered(rng, 0.5, 1.0, 0.0, 1e-3) == 0.0);
    CHECK_THROWS_AS(sample_inverse_tempered(rng, 0.5, 1.0, 1.0, 0.0), DomainError);
    CHECK_THROWS_AS(sample_inverse_tempered(rng, 0.5, 1.0, 1.0, -1e-3), DomainError);
    CHECK(sample_inverse_tempered(rng, 1.0, 1.0, 0.4, 1e-3) == 0.4);

    SUBCASE("theta -> 0 matches the stable law") {
        std::vector<double> ls(5000);
        for (auto& l : ls) l = sample_inverse_tempered(rng, 0.5, 1e-12, 1.0, 1e-3);
        const double d = ks_statistic(ls, [](double s) { return std::erf(s / 2.0); });
        CHECK(d < ks_critical_1pct(ls.size()));
    }
    SUBCASE("Laplace transform matches M_Phi by Talbot inversion") {
        const double delta = 1e-3;
        const Stat st = sample_mean(10000, [&] { return std::exp(-sample_inverse_tempered(rng, 0.5, 1.0, 1.0, delta)); });
        const double ref = m_phi(BernsteinSymbol::tempered(0.5, 1.0), 0.0, 1.0, 1.0);
        CHECK(std::abs(st.mean - ref) < 3.0 * st.se + delta);
    }
    SUBCASE("path version is monotone and agrees with the single-time sampler") {
        const std::vector<double> times{0.0, 0.1, 0.5, 0.5, 1.0, 3.0};
        for (int rep = 0; rep < 50; ++rep) {
            RngStream a(9, rep), b(9, rep);
            const auto path = sample_inverse_tempered_path(a, 0.6, 2.0, times, 1e-3);
            CHECK(path[0] == 0.0);
            for (std::size_t i = 1; i < path.size(); ++i) CHECK(path[i] >= path[i - 1]);
            CHECK(path.back() == sample_inverse_tempered(b, 0.6, 2.0, 3.0, 1e-3));
        }
        const std::vector<double> bad{1.0, 0.5};
        CHECK_THROWS_AS(sample_inverse_tempered_path(rng, 0.5, 1.0, bad, 1e-3), DomainError);
    }
}

TEST_CASE("sample_exit_point: Poisson kernel on the disk") {
    const auto dom = DomainSpec::disk(1.0);
    RngStream rng(4, 0);
    const int n = 100000;
    SUBCASE("uniform from the centre") {
        std::vector<double> angles(n);
        for (auto& a : angles) a = sample_exit_point(rng, dom, {0.0, 0.0, 0.0}).angle;
        CHECK(ks_statistic(angles, [](double a) { return a / (2.0 * kPi); }) < ks_critical_1pct(n));
    }
    SUBCASE("harmonic moments from (0.5, 0)") {
        std::vector<double> angles(n);
        for (auto& a : angles) {
            const auto y = sample_exit_point(rng, dom, {0.5, 0.0, 0.0});
            CHECK(std::abs(std::hypot(y.position[0], y.position[1]) - 1.0) < 1e-15);
            CHECK(y.angle >= 0.0);
            CHECK(y.angle < 2.0 * kPi);
            a = y.angle;
        }
        std::size_t i = 0;
        const Stat c1 = sample_mean(n, [&] { return std::cos(angles[i++]); });
        i = 0;
        const Stat c2 = sample_mean(n, [&] { return std::cos(2.0 * angles[i++]); });
        CHECK(std::abs(c1.mean - 0.5) < 3.0 * c1.se);
        CHECK(std::abs(c2.mean - 0.25) < 3.0 * c2.se);
    }
    SUBCASE("off-axis start, radius 2") {
        const auto big = DomainSpec::disk(2.0);
        const Point x{-0.6, 0.8, 0.0};
        // r^2 sin(2 theta) / R^2 is harmonic: E[sin 2 theta_exit] = 0.25 sin(2 arg x).
        const Stat s = sample_mean(n, [&] { return std::sin(2.0 * sample_exit_point(rng, big, x).angle); });
        CHECK(std::abs(s.mean - 0.25 * std::sin(2.0 * std::atan2(0.8, -0.6))) < 3.0 * s.se);
    }
    CHECK_THROWS_AS(sample_exit_point(rng, dom, {1.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(sample_exit_point(rng, dom, {2.0, 0.0, 0.0}), DomainError);
}

TEST_CASE("sample_exit_point: Poisson kernel on the ball") {
    const auto dom = DomainSpec::ball(2.0);
    RngStream rng(5, 0);
    const int n = 100000;
    const Point x{0.3, -0.4, 0.6};  // |x| / R = 0.39...
    const double r = std::hypot(x[0], x[1], x[2]);
    double sz = 0.0, sz2 = 0.0, sp = 0.0, sp2 = 0.0, sr = 0.0, sr2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto y = sample_exit_point(rng, dom, x);
        CHECK(std::abs(std::hypot(y.position[0], y.position[1], y.position[2]) - 2.0) < 1e-14);
        // harmonic: z, and r^2 P2(cos gamma) about x
        const double z = y.position[2];
        const double cg = (y.position[0] * x[0] + y.position[1] * x[1] + y.position[2] * x[2]) / (2.0 * r);
        const double p2 = 0.5 * (3.0 * cg * cg - 1.0);
        const double xy = y.position[0] * y.position[1];
        sz += z, sz2 += z * z, sp += p2, sp2 += p2 * p2, sr += xy, sr2 += xy * xy;
    }
    auto check = [&](double s, double s2, double expect) {
        const double m = s / n;
        const double se = std::sqrt((s2 / n - m * m) / (n - 1));
        CHECK(std::abs(m - expect) < 3.0 * se);
    };
    check(sz, sz2, x[2]);
    check(sp, sp2, r * r / 4.0);
    check(sr, sr2, x[0] * x[1]);

    SUBCASE("uniform from the centre") {
        std::vector<double> u(n);
        for (auto& v : u) v = sample_exit_point(rng, dom, {0.0, 0.0, 0.0}).position[2] / 2.0;
        CHECK(ks_statistic(u, [](double c) { return 0.5 * (c + 1.0); }) < ks_critical_1pct(n));
    }
}

TEST_CASE("sample_boundary_process: Levy increments on the circle") {
    const auto dom = DomainSpec::disk(1.0);
    RngStream rng(6, 0);
    const auto y0 = BoundaryPoint::on_circle(1.0, 1.0);
    const int n = 100000;

    SUBCASE("s = 0 returns y0") {
        const auto y = sample_boundary_process(rng, dom, {-1.0, 1.0, 0.0}, y0, 0.0);
        CHECK(y.angle == y0.angle);
        CHECK(y.position == y0.position);
    }
    SUBCASE("Fourier coefficients") {
        struct Case {
            double R, k, l, s;
        };
        for (const Case c : {Case{1.0, -1.0, 0.0, 0.7}, Case{1.0, 0.0, 1.0, 0.7}, Case{2.0, -1.0, 0.5, 0.4}}) {
            const auto d = DomainSpec::disk(c.R);
            const auto start = BoundaryPoint::on_circle(0.3, c.R);
            std::vector<double> inc(n);
            for (auto& v : inc) v = sample_boundary_process(rng, d, {c.k, c.l, 0.0}, start, c.s).angle - 0.3;
            for (int m : {1, 2}) {
                std::size_t i = 0;
                const Stat st = sample_mean(n, [&] { return std::cos(m * inc[i++]); });
                const double expect = std::exp(-c.s * (c.l * m * m / (c.R * c.R) + std::abs(c.k) * m / c.R));
                CAPTURE(c.R);
                CAPTURE(m);
                CHECK(std::abs(st.mean - expect) < 3.0 * st.se);
            }
        }
    }
    SUBCASE("semigroup: s1 then s2 has the law of s1 + s2") {
        const BoundaryParams bp{-1.0, 0.5, 0.0};
        for (const auto [s1, s2] : {std::pair{0.1, 0.2}, std::pair{0.5, 0.5}, std::pair{0.05, 1.0}}) {
            std::vector<double> inc(n);
            for (auto& v : inc) {
                const auto a = sample_boundary_process(rng, dom, bp, y0, s1);
                const auto b = sample_boundary_process(rng, dom, bp, a, s2);
                v = wrap_pm(b.angle - y0.angle);
            }
            const double d =
                ks_statistic(inc, [&](double x) { return increment_cdf(x, 1.0, bp.k, bp.l, s1 + s2); });
            CAPTURE(s1);
            CHECK(d < ks_critical_1pct(n));
        }
    }
    SUBCASE("uniform law is stationary") {
        std::vector<double> ang(n);
        for (auto& a : ang) {
            const auto y = sample_exit_point(rng, dom, {0.0, 0.0, 0.0});
            a = sample_boundary_process(rng, dom, {-0.5, 0.2, 0.0}, y, 0.8).angle;
        }
        CHECK(ks_statistic(ang, [](double a) { return a / (2.0 * kPi); }) < ks_critical_1pct(n));
    }
    CHECK_THROWS_AS(sample_boundary_process(rng, dom, {1.0, 1.0, 0.0}, y0, 1.0), PreconditionError);
    CHECK_THROWS_AS(sample_boundary_process(rng, DomainSpec::ball(1.0), {-1.0, 1.0, 0.0}, y0, 1.0),
                    PreconditionError);
    CHECK_THROWS_AS(sample_boundary_process(rng, dom, {-1.0, 1.0, 0.0}, y0, -1.0), DomainError);
}
