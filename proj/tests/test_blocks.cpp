#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "randgroup/blocks.hpp"
#include "randgroup/rng.hpp"

using namespace randgroup;

namespace {

BAutomaton full_automaton(int n) {
    BAutomaton a(n);
    for (int r = 0; r < 2 * n; ++r) {
        a.sigma_empty.insert_rank(r);
        for (int t = 0; t < 2 * n; ++t) a.sigma[static_cast<std::size_t>(r)].insert_rank(t);
    }
    return a;
}

BAutomaton random_automaton(int n, std::uint64_t seed) {
    SplitMix64 rng(seed);
    BAutomaton a(n);
    for (int r = 0; r < 2 * n; ++r) {
        if (rng.below(2)) a.sigma_empty.insert_rank(r);
        for (int t = 0; t < 2 * n; ++t)
            if (rng.below(2)) a.sigma[static_cast<std::size_t>(r)].insert_rank(t);
    }
    return a;
}

// All block words of the given length, by rank odometer.
template <class Fn>
void for_each_block_word(int hat_n, int length, Fn&& fn) {
    std::vector<int> digits(static_cast<std::size_t>(length), 0);
    while (true) {
        std::vector<Letter> letters;
        for (int d : digits) letters.push_back(letter_at_rank(d));
        fn(Word(std::move(letters)));
        int i = length - 1;
        while (i >= 0 && digits[static_cast<std::size_t>(i)] == 2 * hat_n - 1) {
            digits[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++digits[static_cast<std::size_t>(i)];
    }
}

} // namespace

TEST_CASE("the length-2 block alphabet over two generators is the known one") {
    BlockAlphabet ba(Alphabet(2), 2);
    CHECK(ba.generators() == 6);  // n (2n-1)^(B-1)
    CHECK(ba.block_length() == 2);
    CHECK(ba.hat_alphabet().generators() == 6);

    // Class representatives, in order: the reduced pairs preceding their
    // formal inverses.
    CHECK(ba.expand_letter(1) == Word{1, 1});
    CHECK(ba.expand_letter(2) == Word{1, 2});
    CHECK(ba.expand_letter(3) == Word{1, -2});
    CHECK(ba.expand_letter(4) == Word{-1, 2});
    CHECK(ba.expand_letter(5) == Word{-1, -2});
    CHECK(ba.expand_letter(6) == Word{2, 2});
    CHECK(ba.expand_letter(-2) == Word{-2, -1});

    CHECK(ba.compress_block(Word{1, 1}) == 1);
    CHECK(ba.compress_block(Word{-1, -1}) == -1);
    CHECK(ba.compress_block(Word{2, 2}) == 6);
    CHECK(ba.compress_block(Word{-2, 1}) == -4);  // inverse of A1 a2

    CHECK(ba.last_letter(2) == 2);    // a1 a2 ends in a2
    CHECK(ba.last_letter(-2) == -1);  // A2 A1 ends in A1

    CHECK_THROWS_AS(ba.compress_block(Word{1, -1}), std::invalid_argument);
    CHECK_THROWS_AS(ba.compress_block(Word{1}), std::invalid_argument);
    CHECK_THROWS_AS(ba.compress_block(Word{5, 5}), std::invalid_argument);
    CHECK_THROWS_AS(ba.expand_letter(7), std::invalid_argument);
    CHECK_THROWS_AS(BlockAlphabet(Alphabet(2), 0), std::invalid_argument);
}

TEST_CASE("blocks of length 1 reproduce the base alphabet") {
    BlockAlphabet ba(Alphabet(2), 1);
    CHECK(ba.generators() == 2);
    Alphabet base(2);
    SplitMix64 rng(5);
    for (int t = 0; t < 50; ++t) {
        Word w = sample_reduced(base, 1 + static_cast<int>(rng.below(6)), rng);
        CHECK(ba.associate_word(w) == w);
        CHECK(ba.expand(w) == w);
    }
    CHECK(rho_starting(ba, 1).letters() == std::vector<Letter>{-1});
    CHECK(rho_starting(ba, -2).letters() == std::vector<Letter>{2});
}

TEST_CASE("expansion inverts association on reduced words") {
    Alphabet base(2);
    for (int B : {2, 3}) {
        BlockAlphabet ba(base, B);
        SplitMix64 rng(17 + static_cast<std::uint64_t>(B));
        for (int t = 0; t < 80; ++t) {
            const int hat_len = 1 + static_cast<int>(rng.below(4));
            Word w = sample_reduced(base, B * hat_len, rng);
            Word hat = ba.associate_word(w);
            CHECK(hat.size() == static_cast<std::size_t>(hat_len));
            CHECK(ba.expand(hat) == w);
            // Blocks of a reduced word never sit next to their inverses.
            CHECK(is_reduced(hat));
        }
    }
    BlockAlphabet ba(base, 2);
    CHECK_THROWS_AS(ba.associate_word(Word{1, 1, 1}), std::invalid_argument);
}

TEST_CASE("rho sets have size (2n-1)^(B-1) and match at the seam letter") {
    BlockAlphabet ba(Alphabet(2), 2);
    for (int r = 0; r < 4; ++r) {
        const LetterSet rho = rho_starting(ba, letter_at_rank(r));
        CHECK(rho.size() == 3);  // 2 n_hat / (2n)
        CHECK(rho.capacity() == 12);
    }
    for (int r = 0; r < 12; ++r) {
        const Letter hat = letter_at_rank(r);
        CHECK(rho_following(ba, hat) == rho_starting(ba, ba.last_letter(hat)));
        CHECK(rho_following(ba, hat).size() == 3);
    }
    // Expansions cancelling after a1 are exactly those starting with A1.
    CHECK(rho_starting(ba, 1).letters() == std::vector<Letter>{-1, 4, 5});
}

TEST_CASE("the seam-reduced automaton keeps exactly the reduced expansions") {
    BlockAlphabet ba(Alphabet(2), 2);
    BAutomaton a = random_automaton(6, 31);
    BAutomaton red = derive_reduced_automaton(ba, a);
    for (int len = 1; len <= 3; ++len) {
        for_each_block_word(6, len, [&](const Word& hat) {
            const bool expect = accepts(a, hat) && is_reduced(ba.expand(hat));
            CHECK(accepts(red, hat) == expect);
        });
    }
}

TEST_CASE("with unit blocks, seam reduction equals word reduction") {
    BlockAlphabet ba(Alphabet(2), 1);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        BAutomaton a = random_automaton(2, seed);
        BAutomaton red = derive_reduced_automaton(ba, a);
        for (int L = 1; L <= 6; ++L)
            CHECK(count_language_words(red, L) == count_language_reduced(a, L));
    }
}

TEST_CASE("seam reduction costs exactly 1/(2n) of largeness on full sets") {
    BlockAlphabet ba(Alphabet(2), 2);
    BAutomaton red = derive_reduced_automaton(ba, full_automaton(6));
    CHECK(is_lambda_large(red, Fraction(3, 4)));        // 1 - 1/(2n), n = 2
    CHECK_FALSE(is_lambda_large(red, Fraction(76, 100)));

    BAutomaton cont = derive_continuation_automaton(ba, full_automaton(6), 2, 2);
    CHECK(cont.sigma_empty.size() == 9);  // 12 minus the 3 cancelling letters
    CHECK(is_lambda_large(cont, Fraction(1, 1)));  // follower sets untouched
}

TEST_CASE("pairing cancels the shared segment and associates the rest") {
    BlockAlphabet ba(Alphabet(2), 2);
    const Word r1{1, 2, -1};
    const Word r2{1, 2, 2};
    CHECK(pairable(r1, r2, 1));
    CHECK_FALSE(pairable(r1, Word{-2, 1, 1}, 1));
    CHECK_FALSE(pairable(r1, Word{1, 2}, 1));  // length mismatch
    CHECK(pairable(r1, r2, 0));                // empty segment always cancels

    CHECK(pair_relators(ba, r1, r2, 1) == Word{2, 6});  // (a1 a2)(a2 a2)
    CHECK_THROWS_AS(pair_relators(ba, r1, Word{-2, 1, 1}, 1), std::invalid_argument);
    CHECK_THROWS_AS(pair_relators(ba, r1, r2, 0), std::invalid_argument);  // 3 % 2 != 0
    CHECK_THROWS_AS(pair_relators(ba, Word{1, -1, 1}, r2, 1), std::invalid_argument);
}

TEST_CASE("associated sets at shift zero are direct associates") {
    BlockAlphabet ba(Alphabet(2), 2);
    std::vector<Word> relators{Word{1, 2, 1, 2}, Word{1, 2, 1, 2}, Word{2, 2, -1, 2}};
    AssociatedSet s = build_associated_set(ba, relators);
    CHECK(s.shift == 0);
    CHECK(s.hat_length == 2);
    CHECK(s.relators == std::vector<Word>{Word{2, 2}, Word{6, 4}});  // deduplicated
}

TEST_CASE("associated sets at positive shift come from cancelling pairs") {
    BlockAlphabet ba(Alphabet(2), 2);
    std::vector<Word> relators{Word{1, 2, -1}, Word{1, 2, 2}};
    AssociatedSet s = build_associated_set(ba, relators);
    CHECK(s.shift == 1);
    CHECK(s.hat_length == 2);
    // Pairs (0,0) and (0,1) cancel; relator 1 ends in a2, nothing starts A2.
    CHECK(s.relators == std::vector<Word>{Word{2, -3}, Word{2, 6}});

    CHECK_THROWS_AS(build_associated_set(ba, {}), std::invalid_argument);
    CHECK_THROWS_AS(build_associated_set(ba, {Word{1}}), std::invalid_argument);
    CHECK_THROWS_AS(build_associated_set(ba, {Word{1, 2, -1}, Word{1, 2}}),
                    std::invalid_argument);
}

TEST_CASE("prefix and suffix sets feed the pairing property") {
    BlockAlphabet ba(Alphabet(2), 2);
    const BAutomaton full = full_automaton(6);
    const Word r1{1, 2, -1};

    CHECK(in_prefix_set(ba, full, r1, 1));
    // Suffix membership at (a1a2, a1): continues after block a1 a2.
    CHECK(in_suffix_set(ba, full, Word{1, 2, 2}, 2, Word{1}));
    // Wrong prefix: not a member.
    CHECK_FALSE(in_suffix_set(ba, full, Word{2, 2, 2}, 2, Word{1}));
    // Right prefix but the next block cancels the seam (starts with A2).
    CHECK_FALSE(in_suffix_set(ba, full, Word{1, -2, -2}, 2, Word{1}));

    CHECK(pairing_completes_language(ba, full, r1, Word{1, 2, 2}, 1));
    CHECK(pairing_completes_language(ba, full, r1, Word{1, -2, -2}, 1));  // vacuous
}

TEST_CASE("pairing always completes the language, vacuously or not") {
    Alphabet base(2);
    BlockAlphabet ba(base, 2);
    SplitMix64 rng(271828);
    int nonvacuous = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const BAutomaton a =
            trial % 2 ? random_automaton(6, 1000 + static_cast<std::uint64_t>(trial))
                      : full_automaton(6);
        const Word r1 = sample_reduced(base, 5, rng);
        const Word r2 = sample_reduced(base, 5, rng);
        CHECK(pairing_completes_language(ba, a, r1, r2, 1));
        const std::size_t keep = r1.size() - 1;
        if (in_prefix_set(ba, a, r1, 1)) {
            const Word qhat1 = ba.associate_word(subword(r1, 0, keep));
            const Word v = inverse(subword(r1, keep, 1));
            if (in_suffix_set(ba, a, r2, qhat1.back(), v)) ++nonvacuous;
        }
    }
    CHECK(nonvacuous > 0);
}

TEST_CASE("block alphabets respect the enumeration budget") {
    CHECK_THROWS_AS(BlockAlphabet(Alphabet(2), 13), BudgetError);
    BlockAlphabet ba(Alphabet(2), 6);
    CHECK(ba.generators() == 486);  // 2 * 3^5
}

TEST_CASE("hat presentations wrap associated sets") {
    BlockAlphabet ba(Alphabet(2), 2);
    Presentation p;
    p.generators = 2;
    p.relators = {Word{1, 2, -1}, Word{1, 2, 2}};
    Presentation hat = hat_presentation(ba, p);
    CHECK(hat.generators == 6);
    CHECK(hat.length == 2);
    CHECK(hat.relators.size() == 2);

    Presentation wrong;
    wrong.generators = 3;
    wrong.relators = {Word{1, 2, -1}};
    CHECK_THROWS_AS(hat_presentation(ba, wrong), std::invalid_argument);
}
