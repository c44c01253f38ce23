#pragma once

#include <cstdint>
#include <random>

namespace dlpls {

/// Seeded random source with fixed sampling algorithms.
///
/// std::normal_distribution and friends are implementation-defined, so the
/// transforms are implemented here (Box-Muller, Marsaglia-Tsang) to keep
/// streams reproducible across standard libraries. Same seed, same stream.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform on [0, 1).
    double uniform();

    /// Uniform on [lo, hi).
    double uniform(double lo, double hi);

    /// Integer uniform on {lo, ..., hi} inclusive.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

    /// Standard normal via Box-Muller (one spare cached per pair).
    double normal();

    double normal(double mean, double sd) { return mean + sd * normal(); }

    /// Gamma(shape, scale), Marsaglia-Tsang squeeze method.
    double gamma(double shape, double scale);

    /// Fisher-Yates shuffle with this stream.
    template <typename Container>
    void shuffle(Container& c) {
        for (std::size_t i = c.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(
                uniform_int(0, static_cast<std::int64_t>(i) - 1));
            std::swap(c[i - 1], c[j]);
        }
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace dlpls
