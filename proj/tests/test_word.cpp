#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mzvrg/word.hpp"

using namespace mzvrg;

TEST_CASE("word basics and ordering") {
    const Word e = Word::empty();
    CHECK(e.is_empty());
    CHECK(e.str() == "[]");

    const Word w{-1, -3};
    CHECK(w.length() == 2);
    CHECK(w.letter_sum() == -4);
    CHECK(w.abs_weight() == 4);
    CHECK(reverse(w) == Word{-3, -1});
    CHECK(reverse(e) == e);
    CHECK(reverse(Word{5}) == Word{5});

    CHECK(Word{2} < Word{1, 1});       // length first
    CHECK(Word{-3, 0} < Word{-1, -5}); // then lexicographic
    CHECK(parse_word("-1,-3") == w);
    CHECK(parse_word("") == e);
    CHECK(parse_word("[]") == e);
    CHECK_THROWS_AS(parse_word("1,,2"), error);
    CHECK_THROWS_AS(parse_word("1,x"), error);
}

TEST_CASE("compositions are complete and deterministically ordered") {
    CHECK(compositions(1).size() == 1);
    const auto c2 = compositions(2);
    REQUIRE(c2.size() == 2);
    CHECK(c2[0].parts == std::vector<unsigned>{1, 1});
    CHECK(c2[1].parts == std::vector<unsigned>{2});
    CHECK(compositions(3).size() == 4);
    CHECK(compositions(6).size() == 32);
    CHECK_THROWS_AS(compositions(0), error);
}

TEST_CASE("contraction") {
    CHECK(contract(Word{2, 5, -1}, Composition{{2, 1}}) == Word{7, -1});
    const Word w{4, -2, 9};
    CHECK(contract(w, Composition{{1, 1, 1}}) == w);
    CHECK(contract(Word{-1, -3}, Composition{{2}}) == Word{-4});
    CHECK_THROWS_AS(contract(Word{1, 2}, Composition{{3}}), error);
}

TEST_CASE("contraction composes with coarsening") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> letter(-5, 5), len(1, 5);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = len(rng);
        std::vector<Letter> ls;
        for (int i = 0; i < n; ++i) ls.push_back(letter(rng));
        const Word w{std::vector<Letter>(ls)};
        for (const auto& I : compositions(n)) {
            const Word wi = contract(w, I);
            for (const auto& J : compositions(static_cast<int>(I.size()))) {
                // K coarsens I by grouping consecutive parts per J
                Composition K;
                std::size_t pos = 0;
                for (unsigned jp : J.parts) {
                    unsigned s = 0;
                    for (unsigned t = 0; t < jp; ++t) s += I.parts[pos++];
                    K.parts.push_back(s);
                }
                CHECK(contract(wi, J) == contract(w, K));
            }
        }
        // abs_weight / letter_sum invariance
        CHECK(reverse(w).abs_weight() == w.abs_weight());
        CHECK(reverse(w).letter_sum() == w.letter_sum());
        for (const auto& I : compositions(n))
            CHECK(contract(w, I).letter_sum() == w.letter_sum());
    }
}

TEST_CASE("descent numbers") {
    CHECK(descent_number(Permutation::identity(4)) == 0);
    CHECK(descent_number(Permutation{{2, 4, 1, 3}}) == 1);
    CHECK(descent_number(Permutation{{3, 1, 4, 2}}) == 2);
    CHECK(descent_number(Permutation{{4, 3, 2, 1}}) == 3);
}

TEST_CASE("eulerian coefficients") {
    for (std::size_t n = 1; n <= 5; ++n)
        CHECK(eulerian_coefficient(Permutation::identity(n)) == Rational(1, n));
    CHECK(eulerian_coefficient(Permutation{{2, 4, 1, 3}}) == Rational(-1, 12));
    CHECK(eulerian_coefficient(Permutation{{3, 1, 4, 2}}) == Rational(1, 12));
}

TEST_CASE("sum of eulerian coefficients over S_n") {
    for (std::size_t n = 1; n <= 5; ++n) {
        Rational sum;
        for_each_permutation(n, [&](const Permutation& s) { sum += eulerian_coefficient(s); });
        CHECK(sum == (n == 1 ? Rational(1) : Rational(0)));
    }
}

TEST_CASE("c(sigma) vs c(sigma^{-1})") {
    for (std::size_t n = 1; n <= 3; ++n)
        for_each_permutation(n, [&](const Permutation& s) {
            CHECK(eulerian_coefficient(s) == eulerian_coefficient(s.inverse()));
        });
    // in S_4 exactly (2,4,1,3) and (3,1,4,2) break the symmetry
    int breaks = 0;
    for_each_permutation(4, [&](const Permutation& s) {
        if (eulerian_coefficient(s) != eulerian_coefficient(s.inverse())) ++breaks;
    });
    CHECK(breaks == 2);
}
