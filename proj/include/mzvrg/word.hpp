#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mzvrg/errors.hpp"
#include "mzvrg/rational.hpp"

namespace mzvrg {

using Letter = std::int64_t;

// A word z_{k_1} ... z_{k_n} over the integer alphabet Y = { z_k : k in Z }.
// Words are ordered by length first, then lexicographically on letters, so
// linear combinations have one canonical serialised form.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<Letter> ls) : letters_(ls) {}
    explicit Word(std::vector<Letter> ls) : letters_(std::move(ls)) {}

    static Word empty() { return {}; }

    bool is_empty() const { return letters_.empty(); }
    std::size_t length() const { return letters_.size(); }
    const std::vector<Letter>& letters() const { return letters_; }
    Letter letter(std::size_t i) const { return letters_[i]; }
    Letter front() const { return letters_.front(); }

    Letter letter_sum() const {
        return std::accumulate(letters_.begin(), letters_.end(), Letter(0));
    }

    Letter abs_weight() const {
        Letter s = 0;
        for (Letter k : letters_) s += std::abs(k);
        return s;
    }

    Word prefix(std::size_t n) const {
        return Word(std::vector<Letter>(letters_.begin(), letters_.begin() + n));
    }

    Word suffix_from(std::size_t n) const {
        return Word(std::vector<Letter>(letters_.begin() + n, letters_.end()));
    }

    Word concat(const Word& o) const {
        std::vector<Letter> ls = letters_;
        ls.insert(ls.end(), o.letters_.begin(), o.letters_.end());
        return Word(std::move(ls));
    }

    Word prepend(Letter k) const {
        std::vector<Letter> ls;
        ls.reserve(letters_.size() + 1);
        ls.push_back(k);
        ls.insert(ls.end(), letters_.begin(), letters_.end());
        return Word(std::move(ls));
    }

    Word reversed() const {
        std::vector<Letter> ls(letters_.rbegin(), letters_.rend());
        return Word(std::move(ls));
    }

    friend bool operator==(const Word&, const Word&) = default;

    friend std::strong_ordering operator<=>(const Word& a, const Word& b) {
        if (a.length() != b.length()) return a.length() <=> b.length();
        return a.letters_ <=> b.letters_;
    }

    std::string str() const {
        if (letters_.empty()) return "[]";
        std::ostringstream os;
        for (std::size_t i = 0; i < letters_.size(); ++i) os << (i ? "," : "") << letters_[i];
        return os.str();
    }

private:
    std::vector<Letter> letters_;
};

inline Word reverse(const Word& w) { return w.reversed(); }

/// Parses the CLI word syntax: comma-separated integers, "" or "[]" for the
/// empty word.
inline Word parse_word(const std::string& s) {
    if (s.empty() || s == "[]") return Word::empty();
    std::vector<Letter> ls;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        const std::string tok = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
        try {
            std::size_t used = 0;
            const long long v = std::stoll(tok, &used);
            if (used != tok.size() || tok.empty()) throw std::invalid_argument(tok);
            ls.push_back(v);
        } catch (const std::exception&) {
            fail(errc::parse_error, "bad letter '" + tok + "' in word '" + s + "'");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return Word(std::move(ls));
}

// Finite Q-linear combination of words; zero coefficients are never stored.
class LinComb {
public:
    LinComb() = default;
    explicit LinComb(const Word& w, Rational c = Rational(1)) {
        if (c != 0) terms_[w] = std::move(c);
    }

    static LinComb zero() { return {}; }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const std::map<Word, Rational>& terms() const { return terms_; }

    Rational coef(const Word& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add(const Word& w, const Rational& c) {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(w, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    LinComb& operator+=(const LinComb& o) {
        for (const auto& [w, c] : o.terms_) add(w, c);
        return *this;
    }

    LinComb& operator-=(const LinComb& o) {
        for (const auto& [w, c] : o.terms_) add(w, -c);
        return *this;
    }

    friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
    friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }

    LinComb operator*(const Rational& s) const {
        LinComb out;
        if (s == 0) return out;
        for (const auto& [w, c] : terms_) out.terms_[w] = c * s;
        return out;
    }

    LinComb operator-() const { return *this * Rational(-1); }

    /// Applies a word-level map linearly.
    template <class F>
    LinComb map_words(F&& f) const {
        LinComb out;
        for (const auto& [w, c] : terms_) {
            LinComb img = f(w);
            for (const auto& [w2, c2] : img.terms()) out.add(w2, c * c2);
        }
        return out;
    }

    friend bool operator==(const LinComb&, const LinComb&) = default;

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, c] : terms_) {
            os << (first ? "" : " + ") << "(" << c.str() << ")*[" << w.str() << "]";
            first = false;
        }
        return os.str();
    }

private:
    std::map<Word, Rational> terms_;
};

// A composition (i_1, ..., i_m) of the integer n: i_j >= 1, sum = n.
struct Composition {
    std::vector<unsigned> parts;

    unsigned sum() const { return std::accumulate(parts.begin(), parts.end(), 0u); }
    std::size_t size() const { return parts.size(); }
};

/// All 2^{n-1} compositions of n, in the order produced by choosing the first
/// part smallest first: (1,1,..,1) first, (n) last.
inline std::vector<Composition> compositions(int n) {
    if (n <= 0) fail(errc::domain_error, "compositions: n must be >= 1");
    std::vector<Composition> out;
    std::vector<unsigned> cur;
    auto rec = [&](auto&& self, unsigned rem) -> void {
        if (rem == 0) {
            out.push_back(Composition{cur});
            return;
        }
        for (unsigned first = 1; first <= rem; ++first) {
            cur.push_back(first);
            self(self, rem - first);
            cur.pop_back();
        }
    };
    rec(rec, static_cast<unsigned>(n));
    return out;
}

/// Contracted word I[w]: adjacent letters grouped per the composition I and
/// summed inside each group.
inline Word contract(const Word& w, const Composition& I) {
    if (I.sum() != w.length())
        fail(errc::domain_error, "contract: composition of " + std::to_string(I.sum()) +
                                     " applied to word of length " + std::to_string(w.length()));
    std::vector<Letter> out;
    out.reserve(I.size());
    std::size_t pos = 0;
    for (unsigned part : I.parts) {
        Letter s = 0;
        for (unsigned i = 0; i < part; ++i) s += w.letter(pos++);
        out.push_back(s);
    }
    return Word(std::move(out));
}

// Permutation of {1..n} in one-line notation.
struct Permutation {
    std::vector<int> one_line;

    std::size_t degree() const { return one_line.size(); }

    bool is_valid() const {
        std::vector<bool> seen(one_line.size(), false);
        for (int v : one_line) {
            if (v < 1 || v > static_cast<int>(one_line.size()) || seen[v - 1]) return false;
            seen[v - 1] = true;
        }
        return true;
    }

    Permutation inverse() const {
        Permutation inv;
        inv.one_line.resize(one_line.size());
        for (std::size_t i = 0; i < one_line.size(); ++i) inv.one_line[one_line[i] - 1] = i + 1;
        return inv;
    }

    static Permutation identity(std::size_t n) {
        Permutation p;
        p.one_line.resize(n);
        std::iota(p.one_line.begin(), p.one_line.end(), 1);
        return p;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
};

/// Number of positions j with sigma(j+1) < sigma(j).
inline unsigned descent_number(const Permutation& s) {
    unsigned d = 0;
    for (std::size_t j = 0; j + 1 < s.one_line.size(); ++j)
        if (s.one_line[j + 1] < s.one_line[j]) ++d;
    return d;
}

/// c(sigma) = (-1)^{d(sigma)}/n * C(n-1, d(sigma))^{-1}, the descent-statistic
/// coefficient of the first Eulerian idempotent.
inline Rational eulerian_coefficient(const Permutation& s) {
    const std::size_t n = s.degree();
    if (n == 0 || !s.is_valid()) fail(errc::domain_error, "eulerian_coefficient: invalid permutation");
    const unsigned d = descent_number(s);
    Rational c = Rational(1) / (Rational(n) * Rational(binomial(static_cast<unsigned>(n) - 1, d)));
    return d % 2 ? -c : c;
}

/// Calls f(sigma) for every permutation of {1..n} in lexicographic order.
template <class F>
void for_each_permutation(std::size_t n, F&& f) {
    Permutation p = Permutation::identity(n);
    do {
        f(p);
    } while (std::next_permutation(p.one_line.begin(), p.one_line.end()));
}

/// Word with letters rearranged per sigma: position i receives the letter at
/// position sigma(i).
inline Word apply_permutation(const Word& w, const Permutation& s) {
    std::vector<Letter> out(w.length());
    for (std::size_t i = 0; i < w.length(); ++i) out[i] = w.letter(s.one_line[i] - 1);
    return Word(std::move(out));
}

} // namespace mzvrg
