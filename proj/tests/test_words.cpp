#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "randgroup/words.hpp"

using namespace randgroup;

namespace {

// Independent oracle: enumerate ALL length-L letter sequences with an
// odometer, keep the reduced ones. Shares no code with for_each_reduced.
std::vector<Word> reduced_by_filter(const Alphabet& alphabet, int length) {
    std::vector<Word> out;
    const int ranks = alphabet.letter_count();
    std::vector<int> digits(static_cast<std::size_t>(length), 0);
    while (true) {
        std::vector<Letter> letters;
        letters.reserve(digits.size());
        for (int d : digits) letters.push_back(letter_at_rank(d));
        Word w(letters);
        if (is_reduced(w)) out.push_back(w);
        int i = length - 1;
        while (i >= 0 && digits[static_cast<std::size_t>(i)] == ranks - 1) {
            digits[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++digits[static_cast<std::size_t>(i)];
    }
    return out;
}

} // namespace

TEST_CASE("letter helpers agree with the fixed order") {
    CHECK(letter_rank(1) == 0);
    CHECK(letter_rank(-1) == 1);
    CHECK(letter_rank(2) == 2);
    CHECK(letter_rank(-2) == 3);
    CHECK(letter_rank(3) == 4);

    for (int r = 0; r < 10; ++r) {
        CHECK(letter_rank(letter_at_rank(r)) == r);
        CHECK(letter_at_rank(inverse_rank(r)) == inverse(letter_at_rank(r)));
    }

    CHECK(inverse(Letter{3}) == -3);
    CHECK(generator_of(-4) == 4);
    CHECK(sign_of(-4) == -1);
    CHECK(sign_of(4) == +1);
    CHECK(letter_less(1, -1));
    CHECK(letter_less(-1, 2));
    CHECK_FALSE(letter_less(2, -1));
}

TEST_CASE("alphabet validates and reports sizes") {
    Alphabet a(3);
    CHECK(a.generators() == 3);
    CHECK(a.letter_count() == 6);
    CHECK(a.contains(3));
    CHECK(a.contains(-3));
    CHECK_FALSE(a.contains(4));
    CHECK_FALSE(a.contains(0));
    CHECK_THROWS_AS(Alphabet(0), std::invalid_argument);
}

TEST_CASE("word construction rejects zero letters") {
    CHECK_THROWS_AS(Word({1, 0, 2}), std::invalid_argument);
    Word w{1, -2, 1};
    CHECK(w.size() == 3);
    CHECK(w[1] == -2);
    CHECK_THROWS_AS(w.append(0), std::invalid_argument);
}

TEST_CASE("word order is lexicographic in the fixed letter order") {
    CHECK(Word{1} < Word{-1});
    CHECK(Word{-1} < Word{2});
    CHECK(Word{1} < Word{1, 1});          // prefix precedes extension
    CHECK(Word{1, 2} < Word{1, -2});
    CHECK_FALSE(Word{1, -2} < Word{1, 2});
    CHECK_FALSE(Word{} < Word{});
}

TEST_CASE("reduction removes exactly the cancelling pairs") {
    CHECK(is_reduced(Word{}));
    CHECK(is_reduced(Word{1, 2, -1}));
    CHECK_FALSE(is_reduced(Word{1, -1}));
    CHECK_FALSE(is_reduced(Word{2, 1, -1, 2}));

    CHECK(reduce(Word{1, -1}) == Word{});
    CHECK(reduce(Word{2, 1, -1, 2}) == Word{2, 2});
    CHECK(reduce(Word{1, 2, -2, -1, 3}) == Word{3});
    CHECK(reduce(Word{1, 2, 3}) == Word{1, 2, 3});

    // Nested cancellation collapses fully.
    CHECK(reduce(Word{1, 2, 3, -3, -2, -1}) == Word{});
}

TEST_CASE("reduce is idempotent and w times inverse(w) reduces to empty") {
    Alphabet a(2);
    SplitMix64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        // Random unreduced word: independent uniform letters.
        std::vector<Letter> letters;
        const int len = 1 + static_cast<int>(rng.below(12));
        for (int i = 0; i < len; ++i)
            letters.push_back(letter_at_rank(static_cast<int>(rng.below(4))));
        Word w(letters);

        Word r = reduce(w);
        CHECK(is_reduced(r));
        CHECK(reduce(r) == r);
        CHECK(reduce(concat(w, inverse(w))) == Word{});
        CHECK(reduce(concat(inverse(w), w)) == Word{});
        CHECK(inverse(inverse(w)) == w);
    }
}

TEST_CASE("concat and subword behave as sequence operations") {
    Word w = concat(Word{1, 2}, Word{-1, 2});
    CHECK(w == Word{1, 2, -1, 2});
    CHECK(subword(w, 1, 2) == Word{2, -1});
    CHECK(subword(w, 0, 0) == Word{});
    CHECK(subword(w, 4, 0) == Word{});
    CHECK_THROWS_AS(subword(w, 3, 2), std::out_of_range);
}

TEST_CASE("count_reduced matches the closed form and the filter oracle") {
    Alphabet two(2);
    CHECK(count_reduced(two, 0) == 1);
    CHECK(count_reduced(two, 1) == 4);
    CHECK(count_reduced(two, 2) == 12);
    CHECK(count_reduced(two, 3) == 36);

    Alphabet three(3);
    CHECK(count_reduced(three, 3) == 150);

    for (int L = 0; L <= 4; ++L) {
        CHECK(BigInt(reduced_by_filter(two, L).size()) == count_reduced(two, L));
    }
    CHECK(BigInt(reduced_by_filter(three, 3).size()) == count_reduced(three, 3));

    // Stays exact far beyond 64 bits.
    BigInt huge = count_reduced(two, 100);
    CHECK(huge == BigInt(4) * boost::multiprecision::pow(BigInt(3), 99u));
}

TEST_CASE("enumerate_reduced lists R_L in order, without gaps or repeats") {
    Alphabet two(2);

    CHECK(enumerate_reduced(two, 1) ==
          std::vector<Word>{Word{1}, Word{-1}, Word{2}, Word{-2}});

    std::vector<Word> expected2{
        Word{1, 1},   Word{1, 2},   Word{1, -2},  Word{-1, -1},
        Word{-1, 2},  Word{-1, -2}, Word{2, 1},   Word{2, -1},
        Word{2, 2},   Word{-2, 1},  Word{-2, -1}, Word{-2, -2}};
    CHECK(enumerate_reduced(two, 2) == expected2);

    for (int L = 0; L <= 5; ++L) {
        std::vector<Word> got = enumerate_reduced(two, L);
        std::vector<Word> oracle = reduced_by_filter(two, L);
        std::sort(oracle.begin(), oracle.end());
        CHECK(std::is_sorted(got.begin(), got.end()));
        CHECK(got == oracle);
    }
}

TEST_CASE("for_each_reduced visits the same sequence enumerate_reduced returns") {
    Alphabet three(3);
    std::vector<Word> visited;
    for_each_reduced(three, 2, [&](const Word& w) { visited.push_back(w); });
    CHECK(visited == enumerate_reduced(three, 2));
    CHECK(visited.size() == 30);
}

TEST_CASE("sample_reduced draws reduced words of the right length") {
    Alphabet three(3);
    SplitMix64 rng(42);
    for (int trial = 0; trial < 500; ++trial) {
        Word w = sample_reduced(three, 7, rng);
        REQUIRE(w.size() == 7);
        CHECK(is_reduced(w));
        for (Letter s : w) CHECK(three.contains(s));
    }
    CHECK_THROWS_AS(sample_reduced(three, 0, rng), std::invalid_argument);
}

TEST_CASE("sample_reduced is deterministic in the seed") {
    Alphabet two(2);
    SplitMix64 r1(9001), r2(9001), r3(9002);
    std::vector<Word> s1, s2, s3;
    for (int i = 0; i < 50; ++i) {
        s1.push_back(sample_reduced(two, 6, r1));
        s2.push_back(sample_reduced(two, 6, r2));
        s3.push_back(sample_reduced(two, 6, r3));
    }
    CHECK(s1 == s2);
    CHECK(s1 != s3);
}

TEST_CASE("sample_reduced is uniform over R_2 (chi-square, fixed seed)") {
    Alphabet two(2);
    const std::vector<Word> support = enumerate_reduced(two, 2);
    REQUIRE(support.size() == 12);

    std::map<Word, int> counts;
    SplitMix64 rng(20240816);
    const int draws = 12000;
    for (int i = 0; i < draws; ++i) counts[sample_reduced(two, 2, rng)]++;

    double chi2 = 0.0;
    const double expect = draws / 12.0;
    for (const Word& w : support) {
        const double diff = counts[w] - expect;
        chi2 += diff * diff / expect;
    }
    // 99th percentile of chi-square with 11 degrees of freedom.
    CHECK(chi2 < 24.725);
    CHECK(counts.size() == 12);
}

TEST_CASE("text form round trips") {
    Word w{1, -3, 2, -1};
    CHECK(to_text(w) == "a1 A3 a2 A1");
    CHECK(word_from_text("a1 A3 a2 A1") == w);
    CHECK(word_from_text("") == Word{});
    CHECK(word_from_text("  a2\tA2 ") == Word{2, -2});

    CHECK_THROWS_AS(word_from_text("b1"), std::invalid_argument);
    CHECK_THROWS_AS(word_from_text("a0"), std::invalid_argument);
    CHECK_THROWS_AS(word_from_text("a"), std::invalid_argument);
    CHECK_THROWS_AS(word_from_text("a3", Alphabet(2)), std::invalid_argument);
    CHECK(word_from_text("a2", Alphabet(2)) == Word{2});
}
