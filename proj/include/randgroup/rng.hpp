// rng.hpp -- deterministic counter-based random stream (splitmix64)

#pragma once

#include <cstdint>
#include <stdexcept>
#include <limits>

namespace randgroup {

/// The splitmix64 output function: a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Counter-based 64-bit generator (splitmix64). Output depends only on the
/// seed and the number of draws, so any stream position is reproducible
/// independently of scheduling. This is the generator recorded in file
/// manifests; all sampling in the library goes through it.
class SplitMix64 {
public:
    using result_type = std::uint64_t;

    explicit constexpr SplitMix64(std::uint64_t seed) noexcept : counter_(seed) {}

    constexpr std::uint64_t operator()() noexcept {
        std::uint64_t z = (counter_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform draw from {0, ..., bound-1}, unbiased (multiply-shift with
    /// rejection).
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("below: zero bound");
        unsigned __int128 m = static_cast<unsigned __int128>((*this)()) * bound;
        auto lo = static_cast<std::uint64_t>(m);
        if (lo < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (lo < threshold) {
                m = static_cast<unsigned __int128>((*this)()) * bound;
                lo = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    static constexpr std::uint64_t min() noexcept { return 0; }
    static constexpr std::uint64_t max() noexcept {
        return std::numeric_limits<std::uint64_t>::max();
    }

private:
    std::uint64_t counter_;
};

/// Derives the seed of an independent sub-stream (per trial, per length
/// class, ...). Fixed formula so experiment outputs are stable:
/// subseed = mix64(seed XOR mix64(index)).
constexpr std::uint64_t derive_subseed(std::uint64_t seed, std::uint64_t index) noexcept {
    return mix64(seed ^ mix64(index));
}

} // namespace randgroup
