// words.hpp -- free-group words: letters, reduction, enumeration, sampling
//
// A letter is a nonzero signed integer: +k encodes the generator a_k and
// -k encodes its formal inverse. The fixed letter order used everywhere
// (enumeration, word comparison, canonical choices) is
//   a1 < a1^-1 < a2 < a2^-1 < ... < an < an^-1,
// i.e. by generator first, positive sign before negative.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "randgroup/numeric.hpp"
#include "randgroup/rng.hpp"

namespace randgroup {

/// Signed generator index; never zero.
using Letter = std::int32_t;

constexpr Letter inverse(Letter s) noexcept { return -s; }
constexpr int generator_of(Letter s) noexcept { return s < 0 ? -s : s; }
constexpr int sign_of(Letter s) noexcept { return s < 0 ? -1 : +1; }

/// Position of a letter in the fixed order; ranks run 0 .. 2n-1.
constexpr int letter_rank(Letter s) noexcept {
    return 2 * (generator_of(s) - 1) + (s < 0 ? 1 : 0);
}

constexpr Letter letter_at_rank(int rank) noexcept {
    const Letter gen = static_cast<Letter>(rank / 2 + 1);
    return (rank & 1) ? -gen : gen;
}

/// Ranks of a letter and its inverse differ in the lowest bit.
constexpr int inverse_rank(int rank) noexcept { return rank ^ 1; }

constexpr bool letter_less(Letter a, Letter b) noexcept {
    return letter_rank(a) < letter_rank(b);
}

/// A finite generator set {a_1, ..., a_n}. The library permits n = 1 so
/// brute-force oracles stay cheap; statements that need n >= 2 are checked
/// where they are asserted.
class Alphabet {
public:
    explicit Alphabet(int generators) : n_(generators) {
        if (generators < 1)
            throw std::invalid_argument("Alphabet: need at least one generator");
    }

    int generators() const noexcept { return n_; }
    int letter_count() const noexcept { return 2 * n_; }

    bool contains(Letter s) const noexcept {
        return s != 0 && generator_of(s) <= n_;
    }

    friend bool operator==(const Alphabet&, const Alphabet&) = default;

private:
    int n_;
};

/// A word: a finite sequence of letters, possibly empty. Words are plain
/// values; all operations on them are free functions.
class Word {
public:
    Word() = default;

    Word(std::initializer_list<Letter> letters) : letters_(letters) { check(); }

    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {
        check();
    }

    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    Letter operator[](std::size_t i) const noexcept { return letters_[i]; }
    Letter front() const noexcept { return letters_.front(); }
    Letter back() const noexcept { return letters_.back(); }

    const std::vector<Letter>& letters() const noexcept { return letters_; }

    void append(Letter s) {
        if (s == 0) throw std::invalid_argument("Word: zero letter");
        letters_.push_back(s);
    }

    auto begin() const noexcept { return letters_.begin(); }
    auto end() const noexcept { return letters_.end(); }

    friend bool operator==(const Word&, const Word&) = default;

    /// Lexicographic comparison in the fixed letter order; a proper prefix
    /// precedes its extensions.
    friend bool operator<(const Word& a, const Word& b) noexcept {
        return std::lexicographical_compare(
            a.letters_.begin(), a.letters_.end(), b.letters_.begin(),
            b.letters_.end(),
            [](Letter x, Letter y) { return letter_rank(x) < letter_rank(y); });
    }

private:
    void check() const {
        for (Letter s : letters_)
            if (s == 0) throw std::invalid_argument("Word: zero letter");
    }

    std::vector<Letter> letters_;
};

inline bool is_reduced(const Word& w) noexcept {
    for (std::size_t i = 1; i < w.size(); ++i)
        if (w[i] == inverse(w[i - 1])) return false;
    return true;
}

/// Free reduction: repeatedly delete adjacent (x, x^-1) pairs. The result
/// is the unique reduced representative of the same free-group element.
inline Word reduce(const Word& w) {
    std::vector<Letter> stack;
    stack.reserve(w.size());
    for (Letter s : w) {
        if (!stack.empty() && stack.back() == inverse(s))
            stack.pop_back();
        else
            stack.push_back(s);
    }
    return Word(std::move(stack));
}

/// Formal inverse: reversed sequence with every sign flipped.
inline Word inverse(const Word& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (auto it = w.end(); it != w.begin();)
        out.push_back(inverse(*--it));
    return Word(std::move(out));
}

inline Word concat(const Word& a, const Word& b) {
    std::vector<Letter> out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return Word(std::move(out));
}

/// Copy of w[pos, pos+len).
inline Word subword(const Word& w, std::size_t pos, std::size_t len) {
    if (pos + len > w.size())
        throw std::out_of_range("subword: range exceeds word length");
    return Word(std::vector<Letter>(w.begin() + static_cast<std::ptrdiff_t>(pos),
                                    w.begin() + static_cast<std::ptrdiff_t>(pos + len)));
}

/// |R_L|: the number of reduced words of length L, exactly.
/// 1 for L = 0, otherwise 2n (2n-1)^(L-1).
inline BigInt count_reduced(const Alphabet& alphabet, int length) {
    if (length < 0) throw std::invalid_argument("count_reduced: negative length");
    if (length == 0) return 1;
    const int n = alphabet.generators();
    return BigInt(2 * n) * boost::multiprecision::pow(BigInt(2 * n - 1),
                                                      static_cast<unsigned>(length - 1));
}

/// Visits every reduced word of the given length exactly once, in the fixed
/// lexicographic order. Exponential in length; callers own the budget.
template <class Fn>
void for_each_reduced(const Alphabet& alphabet, int length, Fn&& visit) {
    if (length < 0) throw std::invalid_argument("for_each_reduced: negative length");
    const int ranks = alphabet.letter_count();
    std::vector<Letter> buffer;
    buffer.reserve(static_cast<std::size_t>(length));

    auto descend = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            visit(Word(buffer));
            return;
        }
        const int forbidden =
            buffer.empty() ? -1 : inverse_rank(letter_rank(buffer.back()));
        for (int r = 0; r < ranks; ++r) {
            if (r == forbidden) continue;
            buffer.push_back(letter_at_rank(r));
            self(self, remaining - 1);
            buffer.pop_back();
        }
    };
    descend(descend, length);
}

inline std::vector<Word> enumerate_reduced(const Alphabet& alphabet, int length) {
    std::vector<Word> out;
    for_each_reduced(alphabet, length, [&](const Word& w) { out.push_back(w); });
    return out;
}

/// Uniform sample from R_L: first letter uniform over 2n, each later letter
/// uniform over the 2n-1 letters not cancelling its predecessor. Consumes a
/// deterministic number of stream positions per call only through `rng`.
inline Word sample_reduced(const Alphabet& alphabet, int length, SplitMix64& rng) {
    if (length < 1) throw std::invalid_argument("sample_reduced: length must be >= 1");
    const int ranks = alphabet.letter_count();
    std::vector<Letter> out;
    out.reserve(static_cast<std::size_t>(length));

    int first = static_cast<int>(rng.below(static_cast<std::uint64_t>(ranks)));
    out.push_back(letter_at_rank(first));
    for (int i = 1; i < length; ++i) {
        const int forbidden = inverse_rank(letter_rank(out.back()));
        int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(ranks - 1)));
        if (r >= forbidden) ++r;
        out.push_back(letter_at_rank(r));
    }
    return Word(std::move(out));
}

/// Compact text form: "a3" for a_3, "A3" for its inverse, space separated.
inline std::string to_text(const Word& w) {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) out += ' ';
        out += (w[i] < 0) ? 'A' : 'a';
        out += std::to_string(generator_of(w[i]));
    }
    return out;
}

inline Word word_from_text(std::string_view text,
                           std::optional<Alphabet> alphabet = std::nullopt) {
    std::vector<Letter> letters;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (text[pos] == ' ' || text[pos] == '\t') {
            ++pos;
            continue;
        }
        const char head = text[pos];
        if (head != 'a' && head != 'A')
            throw std::invalid_argument("word_from_text: expected 'a<k>' or 'A<k>'");
        ++pos;
        int value = 0;
        bool digits = false;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            value = value * 10 + (text[pos] - '0');
            digits = true;
            ++pos;
        }
        if (!digits || value == 0)
            throw std::invalid_argument("word_from_text: bad generator index");
        const Letter s = head == 'A' ? -value : value;
        if (alphabet && !alphabet->contains(s))
            throw std::invalid_argument("word_from_text: letter outside alphabet");
        letters.push_back(s);
    }
    return Word(std::move(letters));
}

} // namespace randgroup
