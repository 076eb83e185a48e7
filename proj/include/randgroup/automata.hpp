// automata.hpp -- letter-to-letter automata and their languages
//
// An automaton here is a start set sigma_empty plus one follower set
// sigma[s] per signed letter s. It accepts the non-empty words whose first
// letter lies in sigma_empty and where each letter after position 0 lies in
// the follower set of its predecessor. The alphabet may be a block alphabet,
// so n below is whatever generator count the caller works over.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "randgroup/numeric.hpp"
#include "randgroup/words.hpp"

namespace randgroup {

/// Subset of the 2n signed letters, stored densely by rank.
class LetterSet {
public:
    LetterSet() = default;

    explicit LetterSet(int letter_capacity)
        : bits_(static_cast<std::size_t>(letter_capacity), false) {
        if (letter_capacity < 2 || letter_capacity % 2 != 0)
            throw std::invalid_argument("LetterSet: capacity must be a positive even count");
    }

    int capacity() const noexcept { return static_cast<int>(bits_.size()); }
    int size() const noexcept { return count_; }
    bool empty() const noexcept { return count_ == 0; }

    bool contains_rank(int r) const {
        check_rank(r);
        return bits_[static_cast<std::size_t>(r)];
    }
    bool contains(Letter s) const { return contains_rank(letter_rank(s)); }

    void insert_rank(int r) {
        check_rank(r);
        if (!bits_[static_cast<std::size_t>(r)]) {
            bits_[static_cast<std::size_t>(r)] = true;
            ++count_;
        }
    }
    void insert(Letter s) { insert_rank(letter_rank(s)); }

    void erase_rank(int r) {
        check_rank(r);
        if (bits_[static_cast<std::size_t>(r)]) {
            bits_[static_cast<std::size_t>(r)] = false;
            --count_;
        }
    }
    void erase(Letter s) { erase_rank(letter_rank(s)); }

    template <class Fn>
    void for_each_rank(Fn&& fn) const {
        for (int r = 0; r < capacity(); ++r)
            if (bits_[static_cast<std::size_t>(r)]) fn(r);
    }

    /// Members in rank order.
    std::vector<Letter> letters() const {
        std::vector<Letter> out;
        out.reserve(static_cast<std::size_t>(count_));
        for_each_rank([&](int r) { out.push_back(letter_at_rank(r)); });
        return out;
    }

    friend bool operator==(const LetterSet&, const LetterSet&) = default;

private:
    void check_rank(int r) const {
        if (r < 0 || r >= capacity())
            throw std::invalid_argument("LetterSet: rank out of range");
    }

    std::vector<bool> bits_;
    int count_ = 0;
};

/// Transition data (sigma_empty, sigma[0..2n-1]); sigma is indexed by the
/// rank of the preceding letter.
struct BAutomaton {
    int n = 0;
    LetterSet sigma_empty;
    std::vector<LetterSet> sigma;

    BAutomaton() = default;

    /// All sets empty; the language starts out empty too.
    explicit BAutomaton(int generators)
        : n(generators),
          sigma_empty(2 * generators),
          sigma(static_cast<std::size_t>(2 * generators), LetterSet(2 * generators)) {
        if (generators < 1)
            throw std::invalid_argument("BAutomaton: need at least one generator");
    }

    friend bool operator==(const BAutomaton&, const BAutomaton&) = default;
};

/// Membership test for the automaton's language. Letters outside the
/// automaton's alphabet are a caller error, not a rejection.
inline bool accepts(const BAutomaton& a, const Word& w) {
    for (Letter s : w)
        if (generator_of(s) > a.n)
            throw std::invalid_argument("accepts: letter outside the automaton's alphabet");
    if (w.empty()) return false;
    if (!a.sigma_empty.contains(w.front())) return false;
    for (std::size_t i = 1; i < w.size(); ++i)
        if (!a.sigma[static_cast<std::size_t>(letter_rank(w[i - 1]))].contains(w[i]))
            return false;
    return true;
}

/// Largeness: sigma_empty is non-empty and every follower set holds at least
/// lambda * 2n letters. Exact rational comparison, no rounding.
inline bool is_lambda_large(const BAutomaton& a, const Fraction& lambda) {
    if (a.sigma_empty.empty()) return false;
    for (const LetterSet& s : a.sigma)
        if (static_cast<long long>(s.size()) * lambda.den <
            lambda.num * static_cast<long long>(2 * a.n))
            return false;
    return true;
}

namespace detail {

template <bool ReducedOnly>
BigInt count_language(const BAutomaton& a, int length) {
    if (length < 0) throw std::invalid_argument("count_language: negative length");
    if (length == 0) return 0;  // the language holds non-empty words only
    const int ranks = 2 * a.n;
    std::vector<BigInt> cur(static_cast<std::size_t>(ranks));
    for (int r = 0; r < ranks; ++r)
        cur[static_cast<std::size_t>(r)] = a.sigma_empty.contains_rank(r) ? 1 : 0;
    for (int step = 1; step < length; ++step) {
        std::vector<BigInt> next(static_cast<std::size_t>(ranks));
        for (int r = 0; r < ranks; ++r) {
            if (cur[static_cast<std::size_t>(r)] == 0) continue;
            a.sigma[static_cast<std::size_t>(r)].for_each_rank([&](int t) {
                if (ReducedOnly && t == inverse_rank(r)) return;
                next[static_cast<std::size_t>(t)] += cur[static_cast<std::size_t>(r)];
            });
        }
        cur = std::move(next);
    }
    BigInt total = 0;
    for (const BigInt& v : cur) total += v;
    return total;
}

} // namespace detail

/// Number of words of the given length in the language, exactly.
inline BigInt count_language_words(const BAutomaton& a, int length) {
    return detail::count_language<false>(a, length);
}

/// Number of reduced words of the given length in the language, exactly.
inline BigInt count_language_reduced(const BAutomaton& a, int length) {
    return detail::count_language<true>(a, length);
}

/// One sign per generator, +1 or -1, indexed by generator - 1.
using SignVector = std::vector<int>;

inline void validate_signs(const SignVector& signs, int n) {
    if (static_cast<int>(signs.size()) != n)
        throw std::invalid_argument("sign vector: need one sign per generator");
    for (int e : signs)
        if (e != 1 && e != -1)
            throw std::invalid_argument("sign vector: entries must be +1 or -1");
}

/// The automaton whose language is the reduced words written in the letters
/// {a_j^(eps_j)} and starting with a_i^(eps_i). Every follower set is that
/// same positive cone, so the automaton is 1/2-large, and no letter's
/// inverse is ever available, so all accepted words are reduced.
inline BAutomaton make_sign_automaton(int n, const SignVector& signs, int i) {
    validate_signs(signs, n);
    if (i < 1 || i > n)
        throw std::invalid_argument("make_sign_automaton: generator index out of range");
    BAutomaton a(n);
    a.sigma_empty.insert(static_cast<Letter>(signs[static_cast<std::size_t>(i - 1)] * i));
    LetterSet cone(2 * n);
    for (int j = 1; j <= n; ++j)
        cone.insert(static_cast<Letter>(signs[static_cast<std::size_t>(j - 1)] * j));
    for (LetterSet& s : a.sigma) s = cone;
    return a;
}

/// Number of distinct automata over n generators: each of the 2n+1 sets is
/// an arbitrary subset of the 2n letters, hence 2^(2n(2n+1)).
inline BigInt automata_space_size(int n) {
    if (n < 1) throw std::invalid_argument("automata_space_size: need n >= 1");
    return BigInt(1) << (2 * n * (2 * n + 1));
}

/// Growth data measured on reduced language counts up to max_length.
/// k is the last consecutive-count ratio; density solves k = (2n-1)^density;
/// c is the best constant with count(L) >= c * k^L over the measured range.
struct GrowthEstimate {
    double k = 0.0;
    double density = 0.0;
    double c = 0.0;
    bool zero_language = false;
};

inline GrowthEstimate estimate_growth(const BAutomaton& a, int max_length) {
    if (max_length < 2)
        throw std::invalid_argument("estimate_growth: need max_length >= 2");
    std::vector<BigInt> counts;
    counts.reserve(static_cast<std::size_t>(max_length));
    for (int L = 1; L <= max_length; ++L)
        counts.push_back(count_language_reduced(a, L));

    GrowthEstimate g;
    if (counts.back() == 0) {
        g.zero_language = true;
        g.density = std::numeric_limits<double>::quiet_NaN();
        return g;
    }
    // Non-empty at max_length implies non-empty at every shorter length,
    // since prefixes of accepted words are accepted.
    g.k = to_double(counts[static_cast<std::size_t>(max_length - 1)]) /
          to_double(counts[static_cast<std::size_t>(max_length - 2)]);
    g.density = (a.n == 1 || g.k <= 0.0)
                    ? std::numeric_limits<double>::quiet_NaN()
                    : std::log(g.k) / std::log(static_cast<double>(2 * a.n - 1));
    g.c = std::numeric_limits<double>::infinity();
    for (int L = 1; L <= max_length; ++L) {
        const double ratio = to_double(counts[static_cast<std::size_t>(L - 1)]) /
                             std::pow(g.k, static_cast<double>(L));
        g.c = std::min(g.c, ratio);
    }
    return g;
}

} // namespace randgroup
