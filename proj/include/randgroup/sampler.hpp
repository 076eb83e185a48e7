// sampler.hpp -- random relator sets at a prescribed density
//
// A configuration (n, d, L) yields floor((2n-1)^(d*L)) relators, each drawn
// uniformly and independently from the reduced words of length L. Draws are
// counter-based: relator i depends only on (seed, i), so a set can be
// regenerated or partitioned without replaying a shared stream.

#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "randgroup/errors.hpp"
#include "randgroup/numeric.hpp"
#include "randgroup/rng.hpp"
#include "randgroup/words.hpp"

namespace randgroup {

struct SamplerConfig {
    int generators = 2;
    double density = 0.5;
    int length = 1;
    std::uint64_t seed = 0;
};

/// A sampled (or hand-built) finite presentation: n generators and a list of
/// relators. density/seed are recorded when the set came from the sampler.
struct Presentation {
    int generators = 0;
    int length = 0;
    std::optional<double> density;
    std::optional<std::uint64_t> seed;
    std::vector<Word> relators;
};

namespace detail {

/// Floor of base^(p/q) for small q, exact. Returns the root directly when
/// base^p is a perfect q-th power, so values like 9^(3/2) = 27 never pass
/// through floating point.
inline std::optional<BigInt> exact_power_floor(long long base, long long p,
                                               long long q) {
    if (q == 1) return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(p));
    if (q > 64) return std::nullopt;
    const BigInt bp =
        boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(p));
    const BigInt root = integer_nth_root(bp, static_cast<unsigned>(q));
    if (boost::multiprecision::pow(root, static_cast<unsigned>(q)) == bp)
        return root;
    return std::nullopt;
}

/// Floor of base^exponent through 50-digit floats. Refuses to answer when
/// the value sits within 2^-30 of an integer, where the floor could not be
/// certified.
inline BigInt guarded_float_floor(long long base, const BigFloat& exponent) {
    const BigFloat value =
        boost::multiprecision::pow(BigFloat(base), exponent);
    const BigFloat fl = boost::multiprecision::floor(value);
    const BigFloat frac = value - fl;
    const BigFloat guard = boost::multiprecision::ldexp(BigFloat(1), -30);
    if (frac < guard || BigFloat(1) - frac < guard)
        throw std::runtime_error(
            "relator count lies within 2^-30 of an integer; refusing an "
            "uncertified floor");
    return fl.convert_to<BigInt>();
}

} // namespace detail

/// Number of relators at density d and length L over n generators:
/// floor((2n-1)^(d*L)), computed exactly whenever d*L has a small-denominator
/// rational form (recovered from the double) and the power is rational, with
/// a guarded high-precision fallback otherwise. Counts above 2^32 raise
/// SizeLimitError.
inline std::uint64_t compute_relator_count(int n, double d, int L) {
    if (n < 1) throw std::invalid_argument("compute_relator_count: need n >= 1");
    if (L < 0) throw std::invalid_argument("compute_relator_count: negative length");
    if (!std::isfinite(d) || d < 0.0 || d > 1.0)
        throw std::invalid_argument("compute_relator_count: density must lie in [0, 1]");

    const long long base = 2LL * n - 1;
    if (L == 0 || d == 0.0 || base == 1) return 1;

    // Over-cap configurations are rejected before any large power is formed.
    // The final check against 2^32 handles the band this estimate lets through.
    if (d * static_cast<double>(L) * std::log2(static_cast<double>(base)) > 40.0)
        throw SizeLimitError("compute_relator_count: count exceeds the 2^32 cap");

    BigInt count;
    const std::optional<Fraction> df = rational_reconstruct(d, 1'000'000, 1e-12);
    bool exact = false;
    if (df) {
        long long p = df->num * static_cast<long long>(L);
        long long q = df->den;
        const long long g = std::gcd(p, q);
        p /= g;
        q /= g;
        if (auto r = detail::exact_power_floor(base, p, q)) {
            count = *r;
            exact = true;
        } else {
            count = detail::guarded_float_floor(base, BigFloat(p) / q);
            exact = true;
        }
    }
    if (!exact)
        count = detail::guarded_float_floor(base, BigFloat(d) * L);

    if (count > (BigInt(1) << 32))
        throw SizeLimitError("compute_relator_count: count exceeds the 2^32 cap");
    return count.convert_to<std::uint64_t>();
}

/// Draws `count` independent uniform reduced words of the given length.
/// Word i is a pure function of (seed, i).
inline std::vector<Word> sample_words(const Alphabet& alphabet, int length,
                                      std::uint64_t count, std::uint64_t seed) {
    if (length < 1) throw std::invalid_argument("sample_words: length must be >= 1");
    if (count * static_cast<std::uint64_t>(length) > 200'000'000ULL)
        throw SizeLimitError("sample_words: refusing to materialize more than 2e8 letters");
    std::vector<Word> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        SplitMix64 rng(derive_subseed(seed, i));
        out.push_back(sample_reduced(alphabet, length, rng));
    }
    return out;
}

/// Samples a full relator set for the configuration. Relators are iid
/// uniform over the reduced words of length L; repeats are possible and are
/// kept (their frequency is itself a quantity of interest).
inline Presentation sample_relator_set(const SamplerConfig& config) {
    Alphabet alphabet(config.generators);
    if (config.length < 1)
        throw std::invalid_argument("sample_relator_set: length must be >= 1");
    const std::uint64_t count =
        compute_relator_count(config.generators, config.density, config.length);

    Presentation p;
    p.generators = config.generators;
    p.length = config.length;
    p.density = config.density;
    p.seed = config.seed;
    p.relators = sample_words(alphabet, config.length, count, config.seed);
    return p;
}

} // namespace randgroup
