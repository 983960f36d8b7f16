#ifndef POLYMEM_RNG_HPP
#define POLYMEM_RNG_HPP

#include <cstdint>

namespace polymem {

// SplitMix64: tiny, fully specified generator. We do not use std::mt19937 +
// distributions because distribution output is not pinned by the standard;
// every sampled value in a report must be reproducible from (seed, prime) alone.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, bound). bound > 0. Modulo bias is irrelevant at our
    // bound sizes (< 2^32) but we reject the top sliver anyway.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = next();
        while (v >= limit) v = next();
        return v % bound;
    }

private:
    std::uint64_t state_;
};

// Stable derivation of per-generator sub-seeds from an experiment seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    Rng r(seed ^ (0xd1b54a32d192ed03ULL * (salt + 1)));
    return r.next();
}

}  // namespace polymem

#endif
