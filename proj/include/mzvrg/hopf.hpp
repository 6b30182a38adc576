#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "mzvrg/word.hpp"

namespace mzvrg {

enum class ProductMode { QuasiShuffle, Shuffle };

inline const char* mode_name(ProductMode m) {
    return m == ProductMode::QuasiShuffle ? "quasi" : "shuffle";
}

namespace detail {

inline LinComb prepend_all(const LinComb& x, Letter k) {
    LinComb out;
    for (const auto& [w, c] : x.terms()) out.add(w.prepend(k), c);
    return out;
}

// Word-level product cache. Both products are commutative, so keys are
// stored with the smaller word first.
inline LinComb product_words(ProductMode mode, const Word& u, const Word& w) {
    if (u.is_empty()) return LinComb(w);
    if (w.is_empty()) return LinComb(u);

    using Key = std::tuple<int, Word, Word>;
    static std::map<Key, LinComb> cache;
    static std::mutex mu;

    const bool swap = w < u;
    Key key{static_cast<int>(mode), swap ? w : u, swap ? u : w};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const Letter a = u.front(), b = w.front();
    const Word ut = u.suffix_from(1), wt = w.suffix_from(1);
    LinComb r = prepend_all(product_words(mode, ut, w), a);
    r += prepend_all(product_words(mode, u, wt), b);
    if (mode == ProductMode::QuasiShuffle) r += prepend_all(product_words(mode, ut, wt), a + b);

    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::move(key), std::move(r)).first->second;
}

} // namespace detail

/// Bilinear extension of the chosen product.
inline LinComb product(ProductMode mode, const LinComb& u, const LinComb& w) {
    LinComb out;
    for (const auto& [wu, cu] : u.terms())
        for (const auto& [ww, cw] : w.terms()) {
            const LinComb p = detail::product_words(mode, wu, ww);
            for (const auto& [wp, cp] : p.terms()) out.add(wp, cu * cw * cp);
        }
    return out;
}

inline LinComb quasi_shuffle(const LinComb& u, const LinComb& w) {
    return product(ProductMode::QuasiShuffle, u, w);
}
inline LinComb quasi_shuffle(const Word& u, const Word& w) {
    return detail::product_words(ProductMode::QuasiShuffle, u, w);
}
inline LinComb shuffle(const LinComb& u, const LinComb& w) {
    return product(ProductMode::Shuffle, u, w);
}
inline LinComb shuffle(const Word& u, const Word& w) {
    return detail::product_words(ProductMode::Shuffle, u, w);
}

// One term of a deconcatenation tensor sum. Deconcatenation only ever
// produces multiplicity-one word pairs, so a flat list is enough.
struct TensorTerm {
    Word left, right;
    Rational coef;
};
using TensorSum = std::vector<TensorTerm>;

/// Delta(w) = sum_{uv = w} u (x) v, all n+1 splits.
inline TensorSum coproduct(const Word& w) {
    TensorSum out;
    out.reserve(w.length() + 1);
    for (std::size_t i = 0; i <= w.length(); ++i)
        out.push_back({w.prefix(i), w.suffix_from(i), Rational(1)});
    return out;
}

/// Reduced coproduct: proper splits only; defined on ker(eps).
inline TensorSum reduced_coproduct(const Word& w) {
    if (w.is_empty())
        fail(errc::domain_error, "reduced coproduct is undefined on the empty word");
    TensorSum out;
    out.reserve(w.length() - 1);
    for (std::size_t i = 1; i < w.length(); ++i)
        out.push_back({w.prefix(i), w.suffix_from(i), Rational(1)});
    return out;
}

enum class AntipodeMode { ClosedForm, Recursive };

/// S(w) = (-1)^n sum_{I in P(n)} I[reverse(w)]  (quasi-shuffle antipode).
inline LinComb antipode_closed_form(const Word& w) {
    if (w.is_empty()) return LinComb(Word::empty());
    const Word wbar = w.reversed();
    LinComb out;
    const Rational sign = w.length() % 2 ? Rational(-1) : Rational(1);
    for (const auto& I : compositions(static_cast<int>(w.length())))
        out.add(contract(wbar, I), sign);
    return out;
}

/// S(w) = -w - sum m(w' (x) S(w'')) over proper deconcatenations, with the
/// quasi-shuffle multiplication. Kept as an independent cross-check of the
/// closed form.
inline LinComb antipode_recursive(const Word& w) {
    if (w.is_empty()) return LinComb(Word::empty());

    static std::map<Word, LinComb> cache;
    static std::mutex mu;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(w);
        if (it != cache.end()) return it->second;
    }

    LinComb r = -LinComb(w);
    for (std::size_t i = 1; i < w.length(); ++i)
        r -= product(ProductMode::QuasiShuffle, LinComb(w.prefix(i)),
                     antipode_recursive(w.suffix_from(i)));

    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(w, std::move(r)).first->second;
}

inline LinComb antipode(const Word& w, AntipodeMode mode = AntipodeMode::ClosedForm) {
    return mode == AntipodeMode::ClosedForm ? antipode_closed_form(w) : antipode_recursive(w);
}

inline LinComb antipode(const LinComb& x, AntipodeMode mode = AntipodeMode::ClosedForm) {
    return x.map_words([&](const Word& w) { return antipode(w, mode); });
}

/// Hoffman's exponential: exp_H(w) = sum_I  I[w] / (i_1! ... i_k!),
/// a Hopf algebra isomorphism from the shuffle onto the quasi-shuffle side.
inline LinComb hoffman_exp(const Word& w) {
    if (w.is_empty()) return LinComb(Word::empty());
    LinComb out;
    for (const auto& I : compositions(static_cast<int>(w.length()))) {
        Integer d = 1;
        for (unsigned p : I.parts) d *= factorial(p);
        out.add(contract(w, I), Rational(1, d));
    }
    return out;
}

/// log_H(w) = sum_I (-1)^{n-k} I[w] / (i_1 ... i_k), inverse of exp_H.
inline LinComb hoffman_log(const Word& w) {
    if (w.is_empty()) return LinComb(Word::empty());
    LinComb out;
    const std::size_t n = w.length();
    for (const auto& I : compositions(static_cast<int>(n))) {
        Integer d = 1;
        for (unsigned p : I.parts) d *= p;
        Rational c(1, d);
        if ((n - I.size()) % 2) c = -c;
        out.add(contract(w, I), c);
    }
    return out;
}

inline LinComb hoffman_exp(const LinComb& x) {
    return x.map_words([](const Word& w) { return hoffman_exp(w); });
}
inline LinComb hoffman_log(const LinComb& x) {
    return x.map_words([](const Word& w) { return hoffman_log(w); });
}

// Linear endomap of the word algebra, specified on words and evaluated up to
// a length bound.
struct Endomap {
    std::function<LinComb(const Word&)> on_word;
    std::size_t length_bound = 0;

    LinComb operator()(const Word& w) const {
        if (w.length() > length_bound)
            fail(errc::bound_exceeded, "endomap evaluated past its length bound at [" + w.str() + "]");
        return on_word(w);
    }

    LinComb apply(const LinComb& x) const {
        return x.map_words([&](const Word& w) { return (*this)(w); });
    }
};

inline Endomap endomap_identity(std::size_t bound) {
    return {[](const Word& w) { return LinComb(w); }, bound};
}

/// u o eps: the convolution unit.
inline Endomap endomap_unit(std::size_t bound) {
    return {[](const Word& w) { return w.is_empty() ? LinComb(Word::empty()) : LinComb::zero(); },
            bound};
}

/// (f * g)(w) = sum_{uv=w} f(u) . g(v)  with the chosen product on words.
inline Endomap convolve_endomaps(const Endomap& f, const Endomap& g, ProductMode mode) {
    const std::size_t bound = std::min(f.length_bound, g.length_bound);
    return {[f, g, mode](const Word& w) {
                LinComb out;
                for (std::size_t i = 0; i <= w.length(); ++i)
                    out += product(mode, f(w.prefix(i)), g(w.suffix_from(i)));
                return out;
            },
            bound};
}

// Eulerian idempotent pi_1 = log* Id. Expanding the logarithm over the
// conilpotent deconcatenation coproduct gives, per word,
//   pi_1(w) = sum_{k=1}^{n} (-1)^{k-1}/k  sum_{w = u_1...u_k, u_i nonempty}
//             u_1 . u_2 . ... . u_k
// with the chosen product. Quasi-shuffle expansion is exponential in the
// length and renormalisation re-queries subwords heavily, hence the memo.
inline LinComb eulerian_idempotent(const Word& w, ProductMode mode) {
    if (w.is_empty()) fail(errc::domain_error, "eulerian idempotent is undefined on the empty word");

    using Key = std::pair<int, Word>;
    static std::map<Key, LinComb> cache;
    static std::mutex mu;
    Key key{static_cast<int>(mode), w};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }

    const std::size_t n = w.length();
    LinComb out;
    for (const auto& I : compositions(static_cast<int>(n))) {
        std::size_t pos = I.parts[0];
        LinComb acc(w.prefix(I.parts[0]));
        for (std::size_t j = 1; j < I.size(); ++j) {
            acc = product(mode, acc, LinComb(Word(
                      std::vector<Letter>(w.letters().begin() + pos,
                                          w.letters().begin() + pos + I.parts[j]))));
            pos += I.parts[j];
        }
        Rational coef(1, I.size());
        if (I.size() % 2 == 0) coef = -coef;
        out += acc * coef;
    }

    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::move(key), std::move(out)).first->second;
}

inline LinComb eulerian_idempotent(const LinComb& x, ProductMode mode) {
    return x.map_words([&](const Word& w) {
        return w.is_empty() ? LinComb::zero() : eulerian_idempotent(w, mode);
    });
}

/// Descent form of the shuffle-side Eulerian idempotent:
/// pi_1(z_1...z_n) = sum_sigma c(sigma^{-1}) z_{sigma(1)}...z_{sigma(n)}.
inline LinComb pi1_descent(const Word& w) {
    if (w.is_empty()) fail(errc::domain_error, "pi1 is undefined on the empty word");
    LinComb out;
    for_each_permutation(w.length(), [&](const Permutation& s) {
        out.add(apply_permutation(w, s), eulerian_coefficient(s.inverse()));
    });
    return out;
}

/// Transpose idempotent pi_1^T, with coefficients c(sigma); lands in the
/// free Lie algebra.
inline LinComb pi1_dual_descent(const Word& w) {
    if (w.is_empty()) fail(errc::domain_error, "pi1 dual is undefined on the empty word");
    LinComb out;
    for_each_permutation(w.length(), [&](const Permutation& s) {
        out.add(apply_permutation(w, s), eulerian_coefficient(s));
    });
    return out;
}

/// Concatenation commutator [u, v] = uv - vu, bilinear.
inline LinComb bracket(const LinComb& u, const LinComb& v) {
    LinComb out;
    for (const auto& [wu, cu] : u.terms())
        for (const auto& [wv, cv] : v.terms()) {
            out.add(wu.concat(wv), cu * cv);
            out.add(wv.concat(wu), -cu * cv);
        }
    return out;
}

/// [z_a, z_b, z_c] := [[z_a, z_b], z_c].
inline LinComb triple_bracket(Letter a, Letter b, Letter c) {
    return bracket(bracket(LinComb(Word{a}), LinComb(Word{b})), LinComb(Word{c}));
}

} // namespace mzvrg
