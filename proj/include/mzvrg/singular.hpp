#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mzvrg/exact_arith.hpp"
#include "mzvrg/hopf.hpp"
#include "mzvrg/word.hpp"

namespace mzvrg {

struct SingularityVerdict {
    bool non_singular = true;
    std::optional<std::string> failing_condition; // present iff singular
};

// A word z_{k_1}...z_{k_n} is non-singular when its argument tuple avoids
// the singular subvariety of the multiple zeta function:
//   k_1 != 1;  k_1+k_2 not in {2,1,0,-2,-4,...};  k_1+...+k_j > j for j >= 3.
// The depth-2 excluded set is exactly {2,1,0} plus the negative even
// integers; positive even sums >= 4 are allowed.
inline SingularityVerdict is_non_singular(const Word& w) {
    if (w.is_empty()) fail(errc::domain_error, "singularity predicate is undefined on the empty word");
    if (w.letter(0) == 1) return {false, "k1=1"};
    Letter s = w.letter(0);
    for (std::size_t j = 2; j <= w.length(); ++j) {
        s += w.letter(j - 1);
        if (j == 2) {
            const bool excluded = (s == 2 || s == 1 || s == 0) || (s < 0 && s % 2 == 0);
            if (excluded)
                return {false, "k1+k2=" + std::to_string(s) + " in {2,1,0,-2,-4,...}"};
        } else if (s <= static_cast<Letter>(j)) {
            return {false, "k1+...+k" + std::to_string(j) + "=" + std::to_string(s) +
                               " <= " + std::to_string(j)};
        }
    }
    return {};
}

/// True iff every word in the support of x is non-singular (0 qualifies).
inline bool in_coideal_N(const LinComb& x) {
    for (const auto& [w, c] : x.terms()) {
        if (w.is_empty()) return false;
        if (!is_non_singular(w).non_singular) return false;
    }
    return true;
}

// Exact meromorphic-continuation values on the non-positive alphabet:
//   depth 1: zeta(-l) = -B_{l+1}/(l+1)
//   depth 2, k_1+k_2 odd: zeta(-k_1,-k_2) = (1+delta_0(k_2))/2 * B_{k_1+k_2+1}/(k_1+k_2+1)
// These are the only continuation values available in closed form here;
// convergent-word evaluation needs numerics and is out of scope.
inline Rational continuation_value(const Word& w) {
    if (w.is_empty()) fail(errc::domain_error, "continuation value of the empty word");
    const auto verdict = is_non_singular(w);
    if (!verdict.non_singular)
        fail(errc::singular_point, "[" + w.str() + "] is singular (" + *verdict.failing_condition + ")");
    for (Letter k : w.letters())
        if (k > 0)
            fail(errc::unsupported, "[" + w.str() + "]: continuation values are only available "
                                    "for non-positive letters");
    if (w.length() == 1) {
        return riemann_zeta_nonpositive(static_cast<unsigned>(-w.letter(0)));
    }
    if (w.length() == 2) {
        const Letter k1 = -w.letter(0), k2 = -w.letter(1);
        // non-singularity already forces k1+k2 odd here
        Rational v = bernoulli(static_cast<unsigned>(k1 + k2 + 1)) / Rational(k1 + k2 + 1);
        v /= 2;
        if (k2 == 0) v *= 2;
        return v;
    }
    fail(errc::unsupported, "[" + w.str() + "]: no depth>=3 non-singular word has all letters "
                            "non-positive, and convergent words are out of scope");
}

/// All non-singular words of the given depth with letters in [lo, hi],
/// in lexicographic order of the letter tuples.
inline std::vector<Word> enumerate_non_singular(unsigned depth, Letter lo, Letter hi) {
    if (depth < 1) fail(errc::domain_error, "enumerate_non_singular: depth must be >= 1");
    if (lo > hi) fail(errc::domain_error, "enumerate_non_singular: lo > hi");
    std::vector<Word> out;
    std::vector<Letter> cur(depth, lo);
    for (;;) {
        Word w{std::vector<Letter>(cur)};
        if (is_non_singular(w).non_singular) out.push_back(std::move(w));
        std::size_t i = depth;
        while (i > 0 && cur[i - 1] == hi) cur[--i] = lo;
        if (i == 0) break;
        ++cur[i - 1];
    }
    return out;
}

/// Enumerates every word (not only non-singular ones) of the given depth.
template <class F>
void for_each_word(unsigned depth, Letter lo, Letter hi, F&& f) {
    std::vector<Letter> cur(depth, lo);
    for (;;) {
        f(Word{std::vector<Letter>(cur)});
        std::size_t i = depth;
        while (i > 0 && cur[i - 1] == hi) cur[--i] = lo;
        if (i == 0) break;
        ++cur[i - 1];
    }
}

} // namespace mzvrg
