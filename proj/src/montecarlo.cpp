#include "dynbc/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <optional>
#include <thread>

#include "dynbc/error.hpp"

namespace dynbc {

namespace {

struct Moments {
    double n = 0.0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double v) {
        n += 1.0;
        const double d = v - mean;
        mean += d / n;
        m2 += d * (v - mean);
    }

    void merge(const Moments& o) {
        if (o.n == 0.0) return;
        if (n == 0.0) {
            *this = o;
            return;
        }
        const double total = n + o.n;
        const double d = o.mean - mean;
        mean += d * (o.n / total);
        m2 += o.m2 + d * d * (n * o.n / total);
        n = total;
    }
};

Moments block_moments(std::span<const PathRecord> records, double Lambda) {
    Moments m;
    for (const PathRecord& r : records) m.push(Lambda == 0.0 ? r.value : std::exp(-Lambda * r.ell) * r.value);
    return m;
}

MCEstimate finish(const Moments& m) {
    MCEstimate e;
    e.n = static_cast<std::uint64_t>(m.n);
    e.mean = m.mean;
    e.std_error = m.n > 1.0 ? std::sqrt(m.m2 / (m.n - 1.0) / m.n) : 0.0;
    e.ci95_lo = e.mean - 1.96 * e.std_error;
    e.ci95_hi = e.mean + 1.96 * e.std_error;
    return e;
}

// Fixed ell (estimate_w) or a time model to draw it from.
struct TimeSource {
    const TimeModel* model = nullptr;
    double t = 0.0;
    double step = 0.0;
};

class PathSimulator {
public:
    PathSimulator(const DomainSpec& dom, const BoundaryParams& bp, const BoundaryFunction& u0, const Point& x,
                  TimeSource time)
        : dom_(dom), bp_(bp), u0_(u0), x_(x), time_(time) {
        bp.validate();
        if (bp.k > 0.0) throw PreconditionError("k > 0: the Monte Carlo route needs k <= 0");
        if (dom.dim() != 2) throw PreconditionError("the boundary process is only available in dimension 2");
        if (!dom.contains(x)) throw DomainError("evaluation point lies outside the domain");
        if (!(time.t >= 0.0) || !std::isfinite(time.t)) throw DomainError("time must be finite and nonnegative");
        if (dom.on_boundary(x)) start_ = BoundaryPoint::on_circle(std::atan2(x[1], x[0]), dom.radius());
    }

    PathRecord operator()(RngStream& rng) const {
        const BoundaryPoint y = start_ ? *start_ : sample_exit_point(rng, dom_, x_);
        const double ell = time_.model ? sample_time_change(rng, *time_.model, time_.t, time_.step) : time_.t;
        const BoundaryPoint z = sample_boundary_process(rng, dom_, bp_, y, ell);
        const double v = u0_(z.position);
        if (!std::isfinite(v)) throw DomainError("boundary datum returned a non-finite value");
        return {ell, v};
    }

private:
    const DomainSpec& dom_;
    const BoundaryParams& bp_;
    const BoundaryFunction& u0_;
    Point x_;
    TimeSource time_;
    std::optional<BoundaryPoint> start_;
};

// Runs every block, handing each block's records to `sink(block, records)`.
// Blocks are split into contiguous ranges, one per shard thread.
template <class Sink>
void run_blocks(const PathSimulator& sim, const MCConfig& cfg, Sink&& sink) {
    const std::uint64_t n_blocks = (cfg.n_paths + cfg.block_size - 1) / cfg.block_size;
    auto work = [&](std::uint64_t first, std::uint64_t last) {
        std::vector<PathRecord> buf;
        for (std::uint64_t b = first; b < last; ++b) {
            const std::uint64_t begin = b * cfg.block_size;
            const std::uint64_t count = std::min(cfg.block_size, cfg.n_paths - begin);
            RngStream rng(cfg.seed, b);
            buf.resize(count);
            for (std::uint64_t i = 0; i < count; ++i) buf[i] = sim(rng);
            sink(b, std::span<const PathRecord>(buf));
        }
    };
    const auto shards = static_cast<std::uint64_t>(cfg.n_shards);
    if (shards == 1) {
        work(0, n_blocks);
        return;
    }
    std::vector<std::exception_ptr> errors(shards);
    {
        std::vector<std::jthread> threads;
        threads.reserve(shards);
        for (std::uint64_t s = 0; s < shards; ++s) {
            threads.emplace_back([&, s] {
                try {
                    work(n_blocks * s / shards, n_blocks * (s + 1) / shards);
                } catch (...) {
                    errors[s] = std::current_exception();
                }
            });
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

MCEstimate estimate(const PathSimulator& sim, const MCConfig& cfg, double Lambda) {
    const std::uint64_t n_blocks = (cfg.n_paths + cfg.block_size - 1) / cfg.block_size;
    std::vector<Moments> per_block(n_blocks);
    run_blocks(sim, cfg, [&](std::uint64_t b, std::span<const PathRecord> recs) {
        per_block[b] = block_moments(recs, Lambda);
    });
    Moments total;
    for (const Moments& m : per_block) total.merge(m);
    return finish(total);
}

std::vector<PathRecord> collect(const PathSimulator& sim, const MCConfig& cfg) {
    std::vector<PathRecord> out(cfg.n_paths);
    run_blocks(sim, cfg, [&](std::uint64_t b, std::span<const PathRecord> recs) {
        std::copy(recs.begin(), recs.end(), out.begin() + static_cast<std::ptrdiff_t>(b * cfg.block_size));
    });
    return out;
}

double default_step(const MCConfig& cfg, double t) { return cfg.tempered_step > 0.0 ? cfg.tempered_step : 1e-3 * t; }

}  // namespace

void MCConfig::validate() const {
    if (n_paths < 1) throw ConfigError("mc.paths must be positive");
    if (n_shards < 1) throw ConfigError("mc.shards must be positive");
    if (n_paths < static_cast<std::uint64_t>(n_shards)) throw ConfigError("mc.paths must be at least mc.shards");
    if (block_size < 1) throw ConfigError("block size must be positive");
    if (!(tempered_step >= 0.0) || !std::isfinite(tempered_step))
        throw ConfigError("tempered step must be finite and nonnegative");
}

double sample_time_change(RngStream& rng, const TimeModel& model, double t, double tempered_step) {
    if (const auto* c = std::get_if<Caputo>(&model)) return sample_inverse_stable(rng, c->alpha.value(), t);
    const auto& sym = std::get<BernsteinSymbol>(model);
    if (sym.is_stable()) return sample_inverse_stable(rng, sym.alpha(), t);
    if (t == 0.0) return 0.0;
    const double step = tempered_step > 0.0 ? tempered_step : 1e-3 * t;
    return sample_inverse_tempered(rng, sym.alpha(), sym.theta(), t, step);
}

std::vector<PathRecord> simulate_paths(const DomainSpec& dom, const BoundaryParams& bp, const BoundaryFunction& u0,
                                       double t, const Point& x, const MCConfig& cfg) {
    cfg.validate();
    const PathSimulator sim(dom, bp, u0, x, {&cfg.time_model, t, default_step(cfg, t)});
    return collect(sim, cfg);
}

std::vector<PathRecord> simulate_paths_w(const DomainSpec& dom, const BoundaryParams& bp, const BoundaryFunction& u0,
                                         double s, const Point& x, const MCConfig& cfg) {
    cfg.validate();
    const PathSimulator sim(dom, bp, u0, x, {nullptr, s, 0.0});
    return collect(sim, cfg);
}

MCEstimate summarize(std::span<const PathRecord> records, double Lambda, std::uint64_t block_size) {
    if (block_size < 1) throw ConfigError("block size must be positive");
    Moments total;
    for (std::size_t begin = 0; begin < records.size(); begin += block_size) {
        const std::size_t count = std::min<std::size_t>(block_size, records.size() - begin);
        total.merge(block_moments(records.subspan(begin, count), Lambda));
    }
    return finish(total);
}

MCEstimate estimate_solution(const DomainSpec& dom, const BoundaryParams& bp, const BoundaryFunction& u0, double t,
                             const Point& x, const MCConfig& cfg) {
    cfg.validate();
    const PathSimulator sim(dom, bp, u0, x, {&cfg.time_model, t, default_step(cfg, t)});
    return estimate(sim, cfg, bp.Lambda);
}

MCEstimate estimate_w(const DomainSpec& dom, const BoundaryParams& bp, const BoundaryFunction& u0, double s,
                      const Point& x, const MCConfig& cfg) {
    cfg.validate();
    const PathSimulator sim(dom, bp, u0, x, {nullptr, s, 0.0});
    return estimate(sim, cfg, bp.Lambda);
}

}  // namespace dynbc
