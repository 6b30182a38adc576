#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mzvrg/exact_arith.hpp"
#include "mzvrg/hopf.hpp"
#include "mzvrg/singular.hpp"

namespace mzvrg {

// Letter-multiset block of the shuffle-side Eulerian idempotent: pi_1 (the
// descent formula) permutes letters, so the span of { pi_1(w) : w a
// permutation of the multiset } lives inside the block.
struct MultisetBlock {
    std::vector<Letter> multiset;  // sorted ascending
    std::vector<Word> words;       // distinct permutations, lexicographic
    RationalMatrix pi1_matrix;     // row r = coordinates of pi1(words[r])
};

inline MultisetBlock make_block(std::vector<Letter> multiset) {
    std::sort(multiset.begin(), multiset.end());
    MultisetBlock b;
    b.multiset = multiset;
    std::vector<Letter> perm = multiset;
    do {
        b.words.push_back(Word(std::vector<Letter>(perm)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < b.words.size(); ++i) index[b.words[i]] = i;
    for (const Word& w : b.words) {
        std::vector<Rational> row(b.words.size());
        const LinComb image = pi1_descent(w);
        for (const auto& [v, c] : image.terms()) {
            auto it = index.find(v);
            if (it == index.end()) fail(errc::domain_error, "pi_1 left the multiset block");
            row[it->second] = c;
        }
        b.pi1_matrix.append_row(row);
    }
    return b;
}

struct BlockQuotient {
    MultisetBlock block;
    std::size_t dim_v = 0;        // span of pi_1 over all permutations
    std::size_t dim_u = 0;        // span of pi_1 over the non-singular ones
    std::size_t quotient_dim = 0; // dim_v - dim_u
    std::vector<Word> representatives;
    std::vector<Word> literal_class; // what the combinatorial description lists
    std::string class_label;         // depth1 | depth2 | B1 | B2 | B3 | B4 | none
    bool all_permutations_singular = false;
    bool discrepancy = false; // computed quotient != literal class size
    std::string note;
};

namespace detail {

/// Literal combinatorial reading of the basis classes in depths 1-3.
inline std::pair<std::vector<Word>, std::string> literal_basis_class(
    const std::vector<Letter>& multiset) {
    const auto singular = [](std::initializer_list<Letter> ls) {
        return !is_non_singular(Word(ls)).non_singular;
    };
    if (multiset.size() == 1) {
        const Letter k = multiset[0];
        if (singular({k})) return {{Word{k}}, "depth1"};
        return {{}, "depth1"};
    }
    if (multiset.size() == 2) {
        const Letter b = multiset[0], a = multiset[1]; // a >= b
        if (a > b && singular({a, b})) return {{Word{a, b}}, "depth2"};
        return {{}, "depth2"};
    }
    if (multiset.size() == 3) {
        const Letter c = multiset[0], b = multiset[1], a = multiset[2]; // a >= b >= c
        if (a > b && b > c) {
            if (singular({a, b, c})) return {{Word{a, b, c}, Word{a, c, b}}, "B1"};
            if (singular({a, c, b}) && singular({b, a, c})) return {{Word{a, c, b}}, "B2"};
            return {{}, "none"};
        }
        if (a == b && b > c) {
            if (singular({a, a, c})) return {{Word{a, a, c}}, "B3"};
            return {{}, "B3"};
        }
        if (a > b && b == c) {
            if (singular({a, b, b})) return {{Word{a, b, b}}, "B4"};
            return {{}, "B4"};
        }
        return {{}, "none"}; // a == b == c
    }
    return {{}, "none"};
}

} // namespace detail

/// Exact quotient data of one block: dim V = rank pi_1(all words),
/// dim U = rank pi_1(non-singular words), quotient = V/U.
inline BlockQuotient block_quotient(std::vector<Letter> multiset) {
    BlockQuotient q;
    q.block = make_block(std::move(multiset));
    const std::size_t n = q.block.words.size();

    std::vector<std::vector<Rational>> all_rows, ns_rows;
    std::vector<bool> word_singular(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Rational> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = q.block.pi1_matrix.at(i, j);
        word_singular[i] = !is_non_singular(q.block.words[i]).non_singular;
        if (!word_singular[i]) ns_rows.push_back(row);
        all_rows.push_back(std::move(row));
    }
    q.dim_v = rank_of_rows(all_rows);
    q.dim_u = rank_of_rows(ns_rows);
    q.quotient_dim = q.dim_v - q.dim_u;
    q.all_permutations_singular =
        std::all_of(word_singular.begin(), word_singular.end(), [](bool b) { return b; });

    // Representatives: grow the span of U by pi_1 images of further words,
    // preferring singular words in descending lexicographic order.
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i) order.push_back(i);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (word_singular[x] != word_singular[y]) return static_cast<bool>(word_singular[x]);
        return q.block.words[y] < q.block.words[x];
    });
    std::vector<std::vector<Rational>> span = ns_rows;
    std::size_t rank = q.dim_u;
    for (std::size_t i : order) {
        if (rank == q.dim_v) break;
        span.push_back(all_rows[i]);
        const std::size_t r = rank_of_rows(span);
        if (r > rank) {
            rank = r;
            q.representatives.push_back(q.block.words[i]);
        } else {
            span.pop_back();
        }
    }

    auto [literal, label] = detail::literal_basis_class(q.block.multiset);
    q.literal_class = std::move(literal);
    q.class_label = std::move(label);
    q.discrepancy = q.quotient_dim != q.literal_class.size();
    if (q.discrepancy) {
        std::ostringstream os;
        os << "computed quotient dim " << q.quotient_dim << " vs literal class size "
           << q.literal_class.size() << "; non-singular permutations:";
        bool none = true;
        for (std::size_t i = 0; i < n; ++i)
            if (!word_singular[i]) {
                os << " [" << q.block.words[i].str() << "]";
                none = false;
            }
        if (none) os << " (none)";
        q.note = os.str();
    }
    return q;
}

struct BasisReport {
    unsigned depth = 0;
    Letter lo = 0, hi = 0;
    std::vector<BlockQuotient> blocks;
    std::size_t total_quotient_dim = 0;
    std::size_t discrepancy_count = 0;
};

/// Scans every letter multiset of the given depth over [lo, hi].
inline BasisReport wprime_basis(unsigned depth, Letter lo, Letter hi) {
    if (lo > hi) fail(errc::domain_error, "wprime_basis: lo > hi");
    if (depth < 1 || depth > 3)
        fail(errc::domain_error, "wprime_basis computes depths 1-3");
    BasisReport rep;
    rep.depth = depth;
    rep.lo = lo;
    rep.hi = hi;
    std::vector<Letter> cur;
    auto rec = [&](auto&& self, Letter from) -> void {
        if (cur.size() == depth) {
            BlockQuotient q = block_quotient(cur);
            rep.total_quotient_dim += q.quotient_dim;
            rep.discrepancy_count += q.discrepancy ? 1 : 0;
            rep.blocks.push_back(std::move(q));
            return;
        }
        for (Letter k = from; k <= hi; ++k) {
            cur.push_back(k);
            self(self, k);
            cur.pop_back();
        }
    };
    rec(rec, lo);
    return rep;
}

/// The three displayed depth-3 identities relating pi_1 to concatenation
/// brackets; position-based and linear in the letters, so repeated letters
/// are covered too.
inline bool verify_depth3_identities(Letter a, Letter b, Letter c) {
    const auto six_pi1 = [](Letter x, Letter y, Letter z) {
        return pi1_descent(Word{x, y, z}) * Rational(6);
    };
    const auto tb = triple_bracket;

    // 6 pi1(abc) = 6 pi1(cba) = [a,b,c] - [b,c,a] = [a,c,b] - 2[b,c,a]
    const LinComb l1 = six_pi1(a, b, c);
    if (l1 != six_pi1(c, b, a)) return false;
    if (l1 != tb(a, b, c) - tb(b, c, a)) return false;
    if (l1 != tb(a, c, b) - tb(b, c, a) * Rational(2)) return false;

    // 6 pi1(acb) = 6 pi1(bca) = [a,c,b] - [c,b,a] = [a,c,b] + [b,c,a]
    const LinComb l2 = six_pi1(a, c, b);
    if (l2 != six_pi1(b, c, a)) return false;
    if (l2 != tb(a, c, b) - tb(c, b, a)) return false;
    if (l2 != tb(a, c, b) + tb(b, c, a)) return false;

    // 6 pi1(bac) = 6 pi1(cab) = [b,a,c] - [a,c,b] = -2[a,c,b] + [b,c,a]
    const LinComb l3 = six_pi1(b, a, c);
    if (l3 != six_pi1(c, a, b)) return false;
    if (l3 != tb(b, a, c) - tb(a, c, b)) return false;
    if (l3 != tb(a, c, b) * Rational(-2) + tb(b, c, a)) return false;

    return true;
}

/// pi_1 - pi_1^T on a word of four distinct letters; the expected value is
/// (1/6)(l_2 l_4 l_1 l_3 - l_3 l_1 l_4 l_2) in the letters of w.
inline LinComb remark_lie_difference(const Word& w) {
    return pi1_descent(w) - pi1_dual_descent(w);
}

inline LinComb remark_lie_expected(const Word& w) {
    if (w.length() != 4) fail(errc::domain_error, "remark applies to length-4 words");
    const auto at = [&](int i) { return w.letter(static_cast<std::size_t>(i - 1)); };
    LinComb out;
    out.add(Word{at(2), at(4), at(1), at(3)}, Rational(1, 6));
    out.add(Word{at(3), at(1), at(4), at(2)}, Rational(-1, 6));
    return out;
}

/// Difference on the word z_1 z_2 z_3 z_4, checked against the
/// displayed two-term combination.
inline LinComb remark_lie_check() {
    const Word w{1, 2, 3, 4};
    const LinComb diff = remark_lie_difference(w);
    if (diff != remark_lie_expected(w))
        fail(errc::domain_error, "length-4 idempotent discrepancy does not match the display");
    return diff;
}

} // namespace mzvrg
