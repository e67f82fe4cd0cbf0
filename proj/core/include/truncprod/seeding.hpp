#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace truncprod {

/// Identifies one reproducible random stream: a master seed shared by the
/// whole experiment plus the index of the substream (one per realization).
/// Identical (master_seed, stream_index) pairs produce bit-identical draws
/// no matter how realizations are scheduled across workers.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_index = 0;
};

namespace detail {

// SplitMix64 finalizer; full-period 64-bit mixer.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace detail

/// Derives the substream seed: the master seed and the stream index are mixed
/// through two SplitMix64 rounds so that neighbouring indices give unrelated
/// engine states.
constexpr std::uint64_t substream_seed(const SeedSpec& seed) {
    return detail::splitmix64(detail::splitmix64(seed.master_seed) ^
                              detail::splitmix64(~seed.stream_index));
}

/// Deterministic random source. mt19937_64 is fully specified by the
/// standard, and the Gaussian sampler below is hand-rolled, so a given
/// SeedSpec yields the same values on every platform and library version.
class Rng {
  public:
    explicit Rng(const SeedSpec& seed) : engine_(substream_seed(seed)) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Standard normal via Marsaglia polar; one cached value.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double m = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * m;
        have_spare_ = true;
        return u * m;
    }

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace truncprod
