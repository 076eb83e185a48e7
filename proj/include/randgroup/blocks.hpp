// blocks.hpp -- block alphabets: reduced words as letters
//
// Fix a block length B. The reduced base words of length B, taken up to
// formal inversion, form a new generator set of size n(2n-1)^(B-1): each
// class contributes the lexicographically smaller word as its positive
// letter. A reduced base word whose length is a multiple of B then reads as
// a word over this block alphabet (its associated word), and relators whose
// length is B*k + shift are handled by cancelling a length-`shift` segment
// between two relators and associating the concatenation.
//
// Expansions of consecutive block letters can cancel at the seam. The rho
// sets name the letters that cancel, and removing them from an automaton's
// follower sets restricts its language to words with reduced expansions at
// the cost of 1/(2n) of largeness.

#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "randgroup/automata.hpp"
#include "randgroup/errors.hpp"
#include "randgroup/sampler.hpp"
#include "randgroup/words.hpp"

namespace randgroup {

class BlockAlphabet {
public:
    BlockAlphabet(const Alphabet& base, int block_length)
        : base_(base), block_length_(block_length) {
        if (block_length < 1)
            throw std::invalid_argument("BlockAlphabet: block length must be >= 1");
        if (count_reduced(base, block_length) > 1'000'000)
            throw BudgetError("BlockAlphabet: more than 1e6 length-B words");

        for_each_reduced(base, block_length, [&](const Word& w) {
            if (w < inverse(w)) table_.push_back(w);
        });
        // No reduced word equals its own formal inverse, so the table holds
        // exactly half of the reduced words.

        const int ranks = 2 * generators();
        starts_with_.assign(static_cast<std::size_t>(base.letter_count()), {});
        last_letter_.assign(static_cast<std::size_t>(ranks), 0);
        for (int r = 0; r < ranks; ++r) {
            const Word e = expand_letter(letter_at_rank(r));
            starts_with_[static_cast<std::size_t>(letter_rank(e.front()))].push_back(r);
            last_letter_[static_cast<std::size_t>(r)] = e.back();
        }
    }

    const Alphabet& base() const noexcept { return base_; }
    int block_length() const noexcept { return block_length_; }
    int generators() const noexcept { return static_cast<int>(table_.size()); }
    Alphabet hat_alphabet() const { return Alphabet(generators()); }

    /// The base word a block letter stands for.
    Word expand_letter(Letter hat) const {
        const int g = generator_of(hat);
        if (hat == 0 || g > generators())
            throw std::invalid_argument("expand_letter: letter outside the block alphabet");
        const Word& w = table_[static_cast<std::size_t>(g - 1)];
        return hat > 0 ? w : inverse(w);
    }

    Word expand(const Word& hat_word) const {
        std::vector<Letter> out;
        out.reserve(hat_word.size() * static_cast<std::size_t>(block_length_));
        for (Letter h : hat_word) {
            const Word e = expand_letter(h);
            out.insert(out.end(), e.begin(), e.end());
        }
        return Word(std::move(out));
    }

    /// Block letter of one reduced length-B base word.
    Letter compress_block(const Word& block) const {
        if (static_cast<int>(block.size()) != block_length_)
            throw std::invalid_argument("compress_block: wrong block length");
        const auto at = [&](const Word& w) -> std::optional<Letter> {
            const auto it = std::lower_bound(table_.begin(), table_.end(), w);
            if (it != table_.end() && *it == w)
                return static_cast<Letter>(it - table_.begin() + 1);
            return std::nullopt;
        };
        if (auto pos = at(block)) return *pos;
        if (auto neg = at(inverse(block))) return static_cast<Letter>(-*neg);
        throw std::invalid_argument("compress_block: block is not a reduced word over the base alphabet");
    }

    /// The word read block by block. Every length-B block must be reduced;
    /// seams between blocks may cancel (the result is then a block word
    /// whose expansion is unreduced).
    Word associate_word(const Word& w) const {
        if (w.size() % static_cast<std::size_t>(block_length_) != 0)
            throw std::invalid_argument("associate_word: length is not a multiple of the block length");
        std::vector<Letter> out;
        out.reserve(w.size() / static_cast<std::size_t>(block_length_));
        for (std::size_t pos = 0; pos < w.size(); pos += static_cast<std::size_t>(block_length_))
            out.push_back(compress_block(subword(w, pos, static_cast<std::size_t>(block_length_))));
        return Word(std::move(out));
    }

    /// Block-letter ranks whose expansion begins with the given base letter.
    const std::vector<int>& ranks_starting_with(Letter s) const {
        if (!base_.contains(s))
            throw std::invalid_argument("ranks_starting_with: letter outside the base alphabet");
        return starts_with_[static_cast<std::size_t>(letter_rank(s))];
    }

    /// Final base letter of a block letter's expansion.
    Letter last_letter(Letter hat) const {
        const int g = generator_of(hat);
        if (hat == 0 || g > generators())
            throw std::invalid_argument("last_letter: letter outside the block alphabet");
        return last_letter_[static_cast<std::size_t>(letter_rank(hat))];
    }

private:
    Alphabet base_;
    int block_length_;
    std::vector<Word> table_;                  // lex-sorted class representatives
    std::vector<std::vector<int>> starts_with_;  // base rank -> block ranks
    std::vector<Letter> last_letter_;            // block rank -> base letter
};

/// Block letters whose expansion begins with s^-1: the expansions that
/// cancel after a base letter s. Size is (2n-1)^(B-1) = 2n_hat/(2n).
inline LetterSet rho_starting(const BlockAlphabet& ba, Letter s) {
    LetterSet out(2 * ba.generators());
    for (int r : ba.ranks_starting_with(inverse(s))) out.insert_rank(r);
    return out;
}

/// Block letters whose expansion cancels against the end of s_hat's
/// expansion. Equals rho_starting at the expansion's last letter.
inline LetterSet rho_following(const BlockAlphabet& ba, Letter s_hat) {
    return rho_starting(ba, ba.last_letter(s_hat));
}

namespace detail {

inline void require_block_automaton(const BlockAlphabet& ba, const BAutomaton& a) {
    if (a.n != ba.generators())
        throw std::invalid_argument("automaton alphabet does not match the block alphabet");
}

} // namespace detail

/// Removes from every follower set the letters that would cancel at the
/// seam. The language becomes exactly the words of the original language
/// whose expansion is reduced. A lambda-large automaton turns into a
/// (lambda - 1/(2n))-large one, n the base generator count.
inline BAutomaton derive_reduced_automaton(const BlockAlphabet& ba, const BAutomaton& a) {
    detail::require_block_automaton(ba, a);
    BAutomaton out = a;
    for (int r = 0; r < 2 * a.n; ++r) {
        const LetterSet rho = rho_following(ba, letter_at_rank(r));
        rho.for_each_rank([&](int t) { out.sigma[static_cast<std::size_t>(r)].erase_rank(t); });
    }
    return out;
}

/// Restarts the automaton as if s_hat had just been read, after a base
/// letter s: the start set becomes sigma[s_hat] minus the expansions
/// cancelling s, transitions stay. Follower sizes are untouched, so
/// lambda-largeness survives whenever the new start set is non-empty.
inline BAutomaton derive_continuation_automaton(const BlockAlphabet& ba,
                                                const BAutomaton& a, Letter s_hat,
                                                Letter s) {
    detail::require_block_automaton(ba, a);
    if (generator_of(s_hat) > ba.generators() || s_hat == 0)
        throw std::invalid_argument("derive_continuation_automaton: bad block letter");
    BAutomaton out = a;
    out.sigma_empty = a.sigma[static_cast<std::size_t>(letter_rank(s_hat))];
    rho_starting(ba, s).for_each_rank([&](int t) { out.sigma_empty.erase_rank(t); });
    return out;
}

/// Two equal-length relators can pair at a given shift when the last
/// `shift` letters of the first cancel the first `shift` letters of the
/// second exactly.
inline bool pairable(const Word& r1, const Word& r2, int shift) {
    if (shift < 0 || r1.size() != r2.size() ||
        static_cast<std::size_t>(shift) > r1.size())
        return false;
    const std::size_t tail = r1.size() - static_cast<std::size_t>(shift);
    for (int k = 0; k < shift; ++k)
        if (r1[tail + static_cast<std::size_t>(k)] !=
            inverse(r2[static_cast<std::size_t>(shift - 1 - k)]))
            return false;
    return true;
}

namespace detail {

inline int checked_shift(const BlockAlphabet& ba, std::size_t length, int shift) {
    const int B = ba.block_length();
    if (shift < 0 || shift >= B)
        throw std::invalid_argument("shift must lie in [0, block length)");
    if (length < static_cast<std::size_t>(B + shift) ||
        (length - static_cast<std::size_t>(shift)) % static_cast<std::size_t>(B) != 0)
        throw std::invalid_argument("relator length must be B*k + shift with k >= 1");
    return static_cast<int>((length - static_cast<std::size_t>(shift)) /
                            static_cast<std::size_t>(B));
}

} // namespace detail

/// Cancels the shared segment and associates what remains: for r1 = q1 v^-1
/// and r2 = v q2 the result is the block word of q1 q2, of block length
/// 2 * (|r1| - shift) / B. Both halves stay block-aligned, so the result is
/// defined even when q1 q2 cancels further at the seam.
inline Word pair_relators(const BlockAlphabet& ba, const Word& r1, const Word& r2,
                          int shift) {
    detail::checked_shift(ba, r1.size(), shift);
    if (!is_reduced(r1) || !is_reduced(r2))
        throw std::invalid_argument("pair_relators: relators must be reduced");
    if (!pairable(r1, r2, shift))
        throw std::invalid_argument("pair_relators: segments do not cancel");
    const std::size_t keep = r1.size() - static_cast<std::size_t>(shift);
    const Word q1 = subword(r1, 0, keep);
    const Word q2 = subword(r2, static_cast<std::size_t>(shift), keep);
    return ba.associate_word(concat(q1, q2));
}

/// Membership in the prefix set at a given shift: the relator's block-pure
/// head, read as a block word, is accepted by the automaton.
inline bool in_prefix_set(const BlockAlphabet& ba, const BAutomaton& a,
                          const Word& r, int shift) {
    detail::require_block_automaton(ba, a);
    const int hat_len = detail::checked_shift(ba, r.size(), shift);
    if (!is_reduced(r)) throw std::invalid_argument("in_prefix_set: relator must be reduced");
    const Word q = subword(r, 0, static_cast<std::size_t>(hat_len * ba.block_length()));
    return accepts(a, ba.associate_word(q));
}

/// Membership in the suffix set at (s_hat, v): the relator starts with v and
/// its remaining block word continues the automaton's language from s_hat
/// without cancelling the preceding expansion.
inline bool in_suffix_set(const BlockAlphabet& ba, const BAutomaton& a,
                          const Word& r, Letter s_hat, const Word& v) {
    detail::require_block_automaton(ba, a);
    detail::checked_shift(ba, r.size(), static_cast<int>(v.size()));
    if (!is_reduced(r)) throw std::invalid_argument("in_suffix_set: relator must be reduced");
    for (std::size_t k = 0; k < v.size(); ++k)
        if (r[k] != v[k]) return false;
    const Word q = subword(r, v.size(), r.size() - v.size());
    const BAutomaton cont =
        derive_continuation_automaton(ba, a, s_hat, ba.last_letter(s_hat));
    return accepts(cont, ba.associate_word(q));
}

/// The completion property behind pairing: whenever r1 lies in the prefix
/// set and r2 lies in the suffix set at the matching (s_hat, v), the paired
/// block word is accepted by the seam-reduced automaton. Vacuously true
/// when either membership fails.
inline bool pairing_completes_language(const BlockAlphabet& ba, const BAutomaton& a,
                                       const Word& r1, const Word& r2, int shift) {
    if (!in_prefix_set(ba, a, r1, shift)) return true;
    const std::size_t keep = r1.size() - static_cast<std::size_t>(shift);
    const Word qhat1 = ba.associate_word(subword(r1, 0, keep));
    const Letter s_hat = qhat1.back();
    const Word v = inverse(subword(r1, keep, static_cast<std::size_t>(shift)));
    if (!in_suffix_set(ba, a, r2, s_hat, v)) return true;
    return accepts(derive_reduced_automaton(ba, a), pair_relators(ba, r1, r2, shift));
}

/// Block words derived from a relator set, deduplicated in discovery order.
struct AssociatedSet {
    int block_length = 0;
    int shift = 0;       // common relator length mod block length
    int hat_length = 0;  // block length of every derived word
    std::vector<Word> relators;
};

/// Derives block relators from equal-length reduced relators. At shift 0
/// every relator associates directly; otherwise every ordered pair whose
/// segments cancel contributes its paired block word.
inline AssociatedSet build_associated_set(const BlockAlphabet& ba,
                                          const std::vector<Word>& relators) {
    if (relators.empty())
        throw std::invalid_argument("build_associated_set: need at least one relator");
    const std::size_t L = relators[0].size();
    for (const Word& r : relators) {
        if (r.size() != L)
            throw std::invalid_argument("build_associated_set: relators must share one length");
        if (!is_reduced(r))
            throw std::invalid_argument("build_associated_set: relators must be reduced");
    }
    const int B = ba.block_length();
    const int shift = static_cast<int>(L % static_cast<std::size_t>(B));
    const int hat_len = detail::checked_shift(ba, L, shift);

    AssociatedSet out;
    out.block_length = B;
    out.shift = shift;
    out.hat_length = shift == 0 ? hat_len : 2 * hat_len;

    std::set<Word> seen;
    const auto push = [&](Word w) {
        if (seen.insert(w).second) out.relators.push_back(std::move(w));
    };
    if (shift == 0) {
        for (const Word& r : relators) push(ba.associate_word(r));
    } else {
        for (const Word& r1 : relators)
            for (const Word& r2 : relators)
                if (pairable(r1, r2, shift)) push(pair_relators(ba, r1, r2, shift));
    }
    return out;
}

/// The associated presentation over the block generators.
inline Presentation hat_presentation(const BlockAlphabet& ba, const Presentation& p) {
    if (p.generators != ba.base().generators())
        throw std::invalid_argument("hat_presentation: presentation alphabet mismatch");
    AssociatedSet assoc = build_associated_set(ba, p.relators);
    Presentation out;
    out.generators = ba.generators();
    out.length = assoc.hat_length;
    out.relators = std::move(assoc.relators);
    return out;
}

} // namespace randgroup
