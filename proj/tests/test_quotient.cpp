#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mzvrg/quotient.hpp"

using namespace mzvrg;

TEST_CASE("multiset blocks are pi1-stable") {
    for (const auto& ms : {std::vector<Letter>{-1, -3}, {2, 2, -1}, {0, 1, 1, -2}}) {
        const MultisetBlock b = make_block(ms); // throws if pi1 leaves the block
        CHECK(b.pi1_matrix.rows() == b.words.size());
        CHECK(b.pi1_matrix.cols() == b.words.size());
    }
}

TEST_CASE("depth-one blocks") {
    const auto q1 = block_quotient({1});
    CHECK(q1.dim_v == 1);
    CHECK(q1.dim_u == 0);
    CHECK(q1.quotient_dim == 1);
    CHECK_FALSE(q1.discrepancy);
    CHECK(q1.representatives == std::vector<Word>{Word{1}});

    const auto q2 = block_quotient({-4});
    CHECK(q2.quotient_dim == 0);
    CHECK_FALSE(q2.discrepancy);
}

TEST_CASE("the {-1,-3} block survives the quotient") {
    const auto q = block_quotient({-1, -3});
    CHECK(q.dim_v == 1); // pi1(z_{-1}z_{-3}) = -pi1(z_{-3}z_{-1})
    CHECK(q.dim_u == 0); // both orders singular
    CHECK(q.quotient_dim == 1);
    CHECK(q.all_permutations_singular);
    CHECK_FALSE(q.discrepancy);
    REQUIRE(q.representatives.size() == 1);
    CHECK(q.representatives[0] == Word{-1, -3}); // a > b ordering of the class
    CHECK(q.literal_class == std::vector<Word>{Word{-1, -3}});
}

TEST_CASE("the {1,-2} block collapses and is flagged") {
    // (1,-2) is singular but its swap (-2,1) is non-singular, so
    // pi1(z_1 z_{-2}) = -pi1(z_{-2} z_1) already lies in pi1(N)
    const auto q = block_quotient({1, -2});
    CHECK(q.dim_v == 1);
    CHECK(q.dim_u == 1);
    CHECK(q.quotient_dim == 0);
    CHECK_FALSE(q.all_permutations_singular);
    CHECK(q.literal_class == std::vector<Word>{Word{1, -2}});
    CHECK(q.discrepancy);
    CHECK(q.note.find("[-2,1]") != std::string::npos);
}

TEST_CASE("repeated-letter depth-two blocks vanish") {
    const auto q = block_quotient({-1, -1});
    CHECK(q.dim_v == 0); // pi1(z_a z_a) = 0 on the shuffle side
    CHECK(q.quotient_dim == 0);
    CHECK_FALSE(q.discrepancy);
}

TEST_CASE("the all-singular distinct triple {-1,-2,-3}") {
    const auto q = block_quotient({-1, -2, -3});
    CHECK(q.all_permutations_singular);
    CHECK(q.dim_v == 2);
    CHECK(q.dim_u == 0);
    CHECK(q.quotient_dim == 2);
    CHECK_FALSE(q.discrepancy);
    CHECK(q.class_label == "B1");
    REQUIRE(q.representatives.size() == 2);
    CHECK(q.representatives[0] == Word{-1, -2, -3});
    CHECK(q.representatives[1] == Word{-1, -3, -2});
}

TEST_CASE("depth-three span dimension is at most two") {
    std::mt19937 rng(53);
    std::uniform_int_distribution<Letter> letter(-5, 5);
    for (int i = 0; i < 15; ++i) {
        Letter a = letter(rng), b = letter(rng), c = letter(rng);
        const auto q = block_quotient({a, b, c});
        if (a != b && b != c && a != c) CHECK(q.dim_v <= 2);
    }
}

TEST_CASE("depth-3 bracket identities") {
    CHECK(verify_depth3_identities(-1, -2, -3));
    CHECK(verify_depth3_identities(4, 4, -1)); // repeated letters
    CHECK(verify_depth3_identities(0, 0, 0));
    CHECK(verify_depth3_identities(7, -2, 7));

    // consequence: the three pi1 lines sum to zero
    std::mt19937 rng(59);
    std::uniform_int_distribution<Letter> letter(-6, 6);
    for (int i = 0; i < 5; ++i) {
        const Letter a = letter(rng), b = letter(rng), c = letter(rng);
        const LinComb sum = pi1_descent(Word{a, c, b}) + pi1_descent(Word{a, b, c}) +
                            pi1_descent(Word{b, a, c});
        CHECK(sum == LinComb::zero());
    }
}

TEST_CASE("proposition-proof implication at depth three") {
    // if (a,b,c) and (b,a,c) are both non-singular then pi1(z_a z_c z_b)
    // lies in the pi1(N)-span of the block
    std::size_t tested = 0;
    for (Letter a = -4; a <= 4; ++a)
        for (Letter b = -4; b <= 4; ++b)
            for (Letter c = -4; c <= 4; ++c) {
                if (!(a != b && b != c && a != c)) continue;
                if (!is_non_singular(Word{a, b, c}).non_singular) continue;
                if (!is_non_singular(Word{b, a, c}).non_singular) continue;
                const MultisetBlock blk = make_block({a, b, c});
                std::vector<std::vector<Rational>> rows;
                std::vector<Rational> target;
                for (std::size_t i = 0; i < blk.words.size(); ++i) {
                    std::vector<Rational> row(blk.words.size());
                    for (std::size_t j = 0; j < blk.words.size(); ++j)
                        row[j] = blk.pi1_matrix.at(i, j);
                    if (blk.words[i] == Word{a, c, b}) target = row;
                    if (is_non_singular(blk.words[i]).non_singular) rows.push_back(std::move(row));
                }
                const std::size_t before = rank_of_rows(rows);
                rows.push_back(target);
                CHECK(rank_of_rows(rows) == before);
                ++tested;
            }
    CHECK(tested == 48); // eligible triples over [-4,4]^3
}

TEST_CASE("remark on length four") {
    const LinComb diff = remark_lie_check();
    LinComb expect;
    expect.add(Word{2, 4, 1, 3}, Rational(1, 6));
    expect.add(Word{3, 1, 4, 2}, Rational(-1, 6));
    CHECK(diff == expect);

    CHECK(remark_lie_difference(Word{-1, -2, -3}) == LinComb::zero());
    CHECK(remark_lie_difference(Word{5}) == LinComb::zero());

    const Word w{-1, -2, -3, -4};
    CHECK(remark_lie_difference(w) == remark_lie_expected(w));
}

TEST_CASE("wprime basis reports") {
    const auto d1 = wprime_basis(1, -4, 4);
    CHECK(d1.total_quotient_dim == 1);
    CHECK(d1.discrepancy_count == 0);

    const auto d2 = wprime_basis(2, -3, 3);
    CHECK(d2.discrepancy_count > 0); // the (1,-2)-type blocks
    for (const auto& b : d2.blocks) {
        if (b.all_permutations_singular) CHECK_FALSE(b.discrepancy);
        if (b.discrepancy) CHECK_FALSE(b.all_permutations_singular);
    }

    const auto d3 = wprime_basis(3, -2, 2);
    for (const auto& b : d3.blocks) {
        if (b.all_permutations_singular)
            CHECK(b.quotient_dim == b.literal_class.size());
        if (b.discrepancy) CHECK_FALSE(b.all_permutations_singular);
    }
    CHECK_THROWS_AS(wprime_basis(4, -1, 1), error);
}
