#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace onsup {

// Identifies one reproducible pseudo-random stream. Identical (seed, stream)
// pairs produce identical sequences on every platform: mt19937_64 is fully
// specified by the standard and all sampling helpers below avoid
// implementation-defined std::*_distribution classes.
struct RandomSeed {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;

    RandomSeed derive(std::uint64_t substream) const;
};

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline RandomSeed RandomSeed::derive(std::uint64_t substream) const {
    return RandomSeed{seed, splitmix64(stream ^ (substream * 0x9e3779b97f4a7c15ULL))};
}

class Rng {
  public:
    explicit Rng(RandomSeed s)
        : engine_(splitmix64(splitmix64(s.seed) ^ splitmix64(~s.stream))) {}

    std::uint64_t next_u64() { return engine_(); }

    // Unbiased integer in [0, bound), bound >= 1. Mask-and-reject keeps the
    // result independent of the platform's integer division behavior.
    std::uint64_t below(std::uint64_t bound) {
        if (bound <= 1) return 0;
        std::uint64_t mask = ~std::uint64_t{0} >> __builtin_clzll((bound - 1) | 1);
        for (;;) {
            std::uint64_t x = engine_() & mask;
            if (x < bound) return x;
        }
    }

    // Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::size_t j = static_cast<std::size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

    // Random permutation of {0, ..., n-1}.
    std::vector<int> permutation(int n) {
        std::vector<int> p(n);
        for (int i = 0; i < n; ++i) p[i] = i;
        shuffle(p);
        return p;
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace onsup
