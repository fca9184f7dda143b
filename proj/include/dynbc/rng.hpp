#pragma once

#include <cstdint>
#include <random>

namespace dynbc {

/// Independent, reproducible random stream identified by (seed, stream_id).
///
/// The engine is a 64-bit Mersenne Twister seeded through std::seed_seq from
/// both words, so distinct stream ids give decorrelated sequences. A stream
/// must not be shared by two threads at once.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    /// Unit-mean exponential.
    double exponential();
    /// Standard normal.
    double normal();

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_;
};

}  // namespace dynbc
