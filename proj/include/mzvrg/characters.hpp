#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mzvrg/expsum.hpp"
#include "mzvrg/hopf.hpp"
#include "mzvrg/singular.hpp"

namespace mzvrg {

template <class A>
struct algebra_traits;

template <>
struct algebra_traits<Rational> {
    static Rational one() { return Rational(1); }
    static Rational zero() { return Rational(0); }
    static Rational scale(const Rational& a, const Rational& s) { return a * s; }
    static bool is_zero(const Rational& a) { return a == 0; }
};

template <>
struct algebra_traits<TruncatedLaurent> {
    static TruncatedLaurent one() { return TruncatedLaurent::one(); }
    static TruncatedLaurent zero() { return TruncatedLaurent::zero(); }
    static TruncatedLaurent scale(const TruncatedLaurent& a, const Rational& s) {
        return a.scale(s);
    }
    static bool is_zero(const TruncatedLaurent& a) { return a.is_zero(); }
};

// Lazy, memoised character: a unital map from words into a commutative
// algebra A (Rational or TruncatedLaurent). Multiplicativity is a property
// of particular constructions and is verified by the solution checks, never
// assumed.
template <class A>
class Character {
public:
    Character() = default;

    Character(std::string name, std::function<A(const Word&)> eval,
              std::size_t length_bound = 64)
        : name_(std::move(name)), eval_(std::move(eval)), length_bound_(length_bound),
          memo_(std::make_shared<Memo>()) {}

    const std::string& name() const { return name_; }
    std::size_t length_bound() const { return length_bound_; }

    A operator()(const Word& w) const {
        if (w.is_empty()) return algebra_traits<A>::one();
        if (w.length() > length_bound_)
            fail(errc::bound_exceeded,
                 "character '" + name_ + "' evaluated past its length bound at [" + w.str() + "]");
        {
            std::lock_guard<std::mutex> lock(memo_->mu);
            auto it = memo_->values.find(w);
            if (it != memo_->values.end()) return it->second;
        }
        A v = eval_(w);
        std::lock_guard<std::mutex> lock(memo_->mu);
        return memo_->values.emplace(w, std::move(v)).first->second;
    }

    /// Linear extension to combinations of words.
    A evaluate(const LinComb& x) const {
        A acc = algebra_traits<A>::zero();
        for (const auto& [w, c] : x.terms()) acc = acc + algebra_traits<A>::scale((*this)(w), c);
        return acc;
    }

private:
    struct Memo {
        std::map<Word, A> values;
        std::mutex mu;
    };

    std::string name_;
    std::function<A(const Word&)> eval_;
    std::size_t length_bound_ = 0;
    std::shared_ptr<Memo> memo_;
};

template <class A>
Character<A> unit_character(std::size_t bound = 64) {
    return Character<A>("e", [](const Word&) { return algebra_traits<A>::zero(); }, bound);
}

/// (alpha * beta)(w) = sum over all deconcatenations uv = w of alpha(u) beta(v).
template <class A>
Character<A> convolve(const Character<A>& a, const Character<A>& b) {
    const std::size_t bound = std::min(a.length_bound(), b.length_bound());
    return Character<A>(
        a.name() + "*" + b.name(),
        [a, b](const Word& w) {
            A acc = algebra_traits<A>::zero();
            for (std::size_t i = 0; i <= w.length(); ++i)
                acc = acc + a(w.prefix(i)) * b(w.suffix_from(i));
            return acc;
        },
        bound);
}

/// Convolution inverse of a character: alpha^{-1} = alpha o S.
template <class A>
Character<A> inverse(const Character<A>& a) {
    return Character<A>(
        a.name() + "^-1", [a](const Word& w) { return a.evaluate(antipode_closed_form(w)); },
        a.length_bound());
}

/// exp*(delta) for an infinitesimal map delta (zero on the empty word):
/// phi(w) = sum_{k>=1} 1/k! sum_{w = u_1...u_k} delta(u_1)...delta(u_k),
/// finite per word by conilpotency of deconcatenation.
template <class A>
Character<A> exp_convolution(std::string name, std::function<A(const Word&)> delta,
                             std::size_t bound) {
    auto delta_ptr = std::make_shared<std::function<A(const Word&)>>(std::move(delta));
    return Character<A>(
        std::move(name),
        [delta_ptr](const Word& w) {
            A acc = algebra_traits<A>::zero();
            const auto n = static_cast<int>(w.length());
            for (const auto& I : compositions(n)) {
                std::size_t pos = 0;
                A prod = algebra_traits<A>::one();
                for (unsigned part : I.parts) {
                    prod = prod * (*delta_ptr)(Word(std::vector<Letter>(
                               w.letters().begin() + pos, w.letters().begin() + pos + part)));
                    pos += part;
                }
                acc = acc + algebra_traits<A>::scale(prod, Rational(1, factorial(I.size())));
            }
            return acc;
        },
        bound);
}

// ---------------------------------------------------------------------------
// Birkhoff decomposition psi_- * psi = psi_+ by the Bogoliubov recursion,
// with pi the minimal-subtraction projector.
// ---------------------------------------------------------------------------

struct BirkhoffResult {
    TruncatedLaurent minus;
    TruncatedLaurent plus;
};

class BirkhoffSolver {
public:
    explicit BirkhoffSolver(Character<TruncatedLaurent> psi) : psi_(std::move(psi)) {}

    const Character<TruncatedLaurent>& psi() const { return psi_; }

    /// Bogoliubov-prepared value psi_bar(w) = psi(w) + sum psi_-(w') psi(w'')
    /// over proper deconcatenations.
    TruncatedLaurent bogoliubov(const Word& w) {
        TruncatedLaurent r = psi_(w);
        for (std::size_t i = 1; i < w.length(); ++i)
            r = r + counterterm(w.prefix(i)) * psi_(w.suffix_from(i));
        return r;
    }

    /// psi_-(w); unital on the empty word.
    TruncatedLaurent counterterm(const Word& w) {
        if (w.is_empty()) return TruncatedLaurent::one();
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = minus_.find(w);
            if (it != minus_.end()) return it->second;
        }
        TruncatedLaurent v;
        try {
            v = -bogoliubov(w).pole_part();
        } catch (const error& e) {
            if (e.code() != errc::insufficient_truncation) throw;
            fail(errc::insufficient_truncation,
                 std::string(e.what()) + " (while preparing subword [" + w.str() + "])");
        }
        std::lock_guard<std::mutex> lock(mu_);
        return minus_.emplace(w, std::move(v)).first->second;
    }

    BirkhoffResult decompose(const Word& w) {
        const TruncatedLaurent bar = bogoliubov(w);
        auto [pole, finite] = bar.minimal_subtraction();
        BirkhoffResult r{-pole, finite};
        if (r.plus.has_pole())
            fail(errc::insufficient_truncation,
                 "renormalised part of [" + w.str() + "] kept a pole");
        return r;
    }

private:
    Character<TruncatedLaurent> psi_;
    std::map<Word, TruncatedLaurent> minus_;
    std::mutex mu_;
};

inline Character<TruncatedLaurent> minus_character(std::shared_ptr<BirkhoffSolver> solver) {
    return Character<TruncatedLaurent>(
        solver->psi().name() + "-", [solver](const Word& w) { return solver->counterterm(w); },
        solver->psi().length_bound());
}

inline Character<TruncatedLaurent> plus_character(std::shared_ptr<BirkhoffSolver> solver) {
    return Character<TruncatedLaurent>(
        solver->psi().name() + "+", [solver](const Word& w) { return solver->decompose(w).plus; },
        solver->psi().length_bound());
}

/// The Laurent-valued regularised character of a scheme.
inline Character<TruncatedLaurent> scheme_character(const SchemeKernel& s,
                                                    std::optional<Exp> window = std::nullopt,
                                                    std::size_t length_bound = 16) {
    return Character<TruncatedLaurent>(
        "zeta_" + s.cache_key(), [s, window](const Word& w) { return regularised_mzv(w, s, window); },
        length_bound);
}

// ---------------------------------------------------------------------------
// Tables of renormalised values on a finite bound.
// ---------------------------------------------------------------------------

enum class Alphabet { StrictlyNegative, NonPositive };

inline const char* alphabet_name(Alphabet a) {
    return a == Alphabet::StrictlyNegative ? "strictly-negative" : "non-positive";
}

struct Bound {
    std::size_t max_length = 0;
    Letter max_abs_weight = 0;
};

inline bool letter_in_alphabet(Letter k, Alphabet a) {
    return a == Alphabet::StrictlyNegative ? k < 0 : k <= 0;
}

inline bool word_in_bound(const Word& w, Alphabet a, const Bound& b) {
    if (w.is_empty() || w.length() > b.max_length || w.abs_weight() > b.max_abs_weight)
        return false;
    for (Letter k : w.letters())
        if (!letter_in_alphabet(k, a)) return false;
    return true;
}

/// All non-empty words over the alphabet within the bound, in canonical
/// order (length, then lexicographic).
inline std::vector<Word> enumerate_alphabet_words(Alphabet a, const Bound& b) {
    std::vector<Word> out;
    std::vector<Letter> cur;
    const Letter top = a == Alphabet::StrictlyNegative ? -1 : 0;
    auto rec = [&](auto&& self, Letter budget) -> void {
        if (!cur.empty()) out.push_back(Word(std::vector<Letter>(cur)));
        if (cur.size() == b.max_length) return;
        for (Letter k = -budget; k <= top; ++k) {
            cur.push_back(k);
            self(self, budget + k); // k <= 0, so the weight budget shrinks by |k|
            cur.pop_back();
        }
    };
    rec(rec, b.max_abs_weight);
    std::sort(out.begin(), out.end());
    return out;
}

// EMS depth-one diagnostic: the pipeline value at z_{-1} against the
// continuation value -1/12, under both lambda conventions. Embedded in EMS
// table metadata rather than aborting generation.
struct EmsCompatReport {
    Rational t;
    Rational required;       // -1/12
    Rational computed_left;  // lambda-left convention
    Rational computed_right; // flipped convention
    bool pass_left = false;
    bool pass_right = false;
};

struct CharacterTable {
    std::string name;
    Alphabet alphabet = Alphabet::StrictlyNegative;
    Bound bound;
    std::string lambda_convention = "left";
    std::string provenance;
    std::map<Word, Rational> values;
    std::optional<EmsCompatReport> ems_compat;

    bool has(const Word& w) const { return values.count(w) != 0; }

    Rational value(const Word& w) const {
        if (w.is_empty()) return Rational(1);
        auto it = values.find(w);
        if (it == values.end())
            fail(errc::bound_exceeded, "table '" + name + "' has no value for [" + w.str() + "]");
        return it->second;
    }

    std::vector<Word> missing_words() const {
        std::vector<Word> out;
        for (const Word& w : enumerate_alphabet_words(alphabet, bound))
            if (!has(w)) out.push_back(w);
        return out;
    }
};

/// Rational character backed by a table (errors outside the bound).
inline Character<Rational> table_character(const CharacterTable& t) {
    return Character<Rational>(
        t.name, [t](const Word& w) { return t.value(w); }, t.bound.max_length);
}

namespace detail {

/// Birkhoff-renormalised value at lambda = 0 for a fixed scheme variant.
/// Subwords are evaluated at the full word's window so the counterterm
/// products keep the constant term inside the known window.
inline Rational renorm_value_fixed(const Word& w, const SchemeKernel& s) {
    BirkhoffSolver solver(scheme_character(s, pole_budget(w) + 1));
    return solver.decompose(w).plus.finite_part_at_zero();
}

} // namespace detail

/// Renormalised value of one word: finite part of the Birkhoff plus-factor.
///
/// GZ words containing z_0 are summed with the auxiliary damping rates
/// rho = 1/7, 1/11, 1/13 on z_0; the three renormalised values must agree
/// (they are direction-independent at non-singular zero words) or the value
/// is refused rather than reported.
inline Rational renormalised_value(const Word& w, const SchemeKernel& s) {
    if (w.is_empty()) return Rational(1);
    bool has_zero = false;
    for (Letter k : w.letters()) has_zero |= k == 0;
    if (s.kind != SchemeKernel::Kind::GZ || !has_zero || s.gz_zero_rate != 0)
        return detail::renorm_value_fixed(w, s);

    const Rational rhos[] = {Rational(1, 7), Rational(1, 11), Rational(1, 13)};
    std::optional<Rational> agreed;
    for (const Rational& rho : rhos) {
        const Rational v = detail::renorm_value_fixed(w, s.with_zero_rate(rho));
        if (!agreed) {
            agreed = v;
        } else if (*agreed != v) {
            fail(errc::unsupported,
                 "[" + w.str() + "]: renormalised value depends on the z_0 damping direction "
                 "(" + agreed->str() + " vs " + v.str() + "); no direction-independent value");
        }
    }
    return *agreed;
}

inline EmsCompatReport ems_depth1_check(const Rational& t) {
    EmsCompatReport r;
    r.t = t;
    r.required = Rational(-1, 12);
    r.computed_left = detail::renorm_value_fixed(Word{-1}, SchemeKernel::ems(t));
    r.computed_right = detail::renorm_value_fixed(Word{-1}, SchemeKernel::ems(t).flipped());
    r.pass_left = r.computed_left == r.required;
    r.pass_right = r.computed_right == r.required;
    return r;
}

/// Full table of renormalised values on a bound. For EMS the depth-one
/// continuation diagnostic is run first and embedded in the metadata.
inline CharacterTable renormalised_character(const SchemeKernel& s, Alphabet alphabet,
                                             const Bound& bound, std::string name = {}) {
    if (s.kind == SchemeKernel::Kind::EMS && alphabet != Alphabet::StrictlyNegative)
        fail(errc::unsupported_letter, "EMS kernels cover strictly negative letters only");
    CharacterTable t;
    t.name = name.empty() ? s.name() : std::move(name);
    t.alphabet = alphabet;
    t.bound = bound;
    t.lambda_convention = s.flip_lambda ? "right" : "left";
    t.provenance = "engine:" + s.cache_key();
    if (s.kind == SchemeKernel::Kind::EMS) t.ems_compat = ems_depth1_check(s.t);
    for (const Word& w : enumerate_alphabet_words(alphabet, bound))
        t.values[w] = renormalised_value(w, s);
    return t;
}

// ---------------------------------------------------------------------------
// Solution verification and the renormalisation group action.
// ---------------------------------------------------------------------------

struct MultiplicativityViolation {
    Word u, w;
    Rational product;  // t(u) t(w)
    Rational expanded; // sum over the quasi-shuffle expansion
};

struct ContinuationViolation {
    Word w;
    Rational expected, got;
};

struct SolutionReport {
    bool passed = true;
    std::vector<MultiplicativityViolation> multiplicativity;
    std::vector<ContinuationViolation> continuation;

    std::string summary() const {
        std::ostringstream os;
        os << (passed ? "pass" : "fail") << " (" << multiplicativity.size()
           << " multiplicativity, " << continuation.size() << " continuation violations)";
        return os.str();
    }
};

/// Pairs (u, w), u <= w, whose quasi-shuffle expansion stays inside the bound.
inline std::vector<std::pair<Word, Word>> stuffle_pairs_in_bound(Alphabet a, const Bound& b) {
    const std::vector<Word> words = enumerate_alphabet_words(a, b);
    std::vector<std::pair<Word, Word>> out;
    for (std::size_t i = 0; i < words.size(); ++i)
        for (std::size_t j = i; j < words.size(); ++j) {
            if (words[i].length() + words[j].length() > b.max_length) continue;
            if (words[i].abs_weight() + words[j].abs_weight() > b.max_abs_weight) continue;
            out.emplace_back(words[i], words[j]);
        }
    return out;
}

// Membership check for the set of solutions of the renormalisation problem:
// (a) character property across every quasi-shuffle pair inside the bound,
// (b) restriction to the continuation values on non-singular words (depth
//     <= 2 is where closed forms exist).
inline SolutionReport verify_solution(const CharacterTable& t) {
    if (auto missing = t.missing_words(); !missing.empty()) {
        std::ostringstream os;
        os << "table '" << t.name << "' is missing " << missing.size() << " word(s):";
        for (std::size_t i = 0; i < missing.size() && i < 12; ++i)
            os << " [" << missing[i].str() << "]";
        if (missing.size() > 12) os << " ...";
        fail(errc::incomplete_table, os.str());
    }
    SolutionReport report;
    for (const auto& [u, w] : stuffle_pairs_in_bound(t.alphabet, t.bound)) {
        const Rational lhs = t.value(u) * t.value(w);
        Rational rhs;
        const LinComb expansion = quasi_shuffle(u, w);
        for (const auto& [v, c] : expansion.terms()) rhs += c * t.value(v);
        if (lhs != rhs) report.multiplicativity.push_back({u, w, lhs, rhs});
    }
    for (const auto& [w, val] : t.values) {
        if (w.length() > 2 || !is_non_singular(w).non_singular) continue;
        const Rational expected = continuation_value(w);
        if (val != expected) report.continuation.push_back({w, expected, val});
    }
    report.passed = report.multiplicativity.empty() && report.continuation.empty();
    return report;
}

struct TransferReport {
    bool in_group = true;
    std::vector<Word> nonvanishing; // non-singular words where phi != 0
    std::vector<MultiplicativityViolation> multiplicativity;
};

/// Checks phi|_N = 0 and multiplicativity inside the bound.
inline TransferReport check_transfer(const Character<Rational>& phi, Alphabet a, const Bound& b) {
    TransferReport r;
    for (const Word& w : enumerate_alphabet_words(a, b))
        if (is_non_singular(w).non_singular && phi(w) != 0) r.nonvanishing.push_back(w);
    for (const auto& [u, w] : stuffle_pairs_in_bound(a, b)) {
        const Rational lhs = phi(u) * phi(w);
        Rational rhs;
        const LinComb expansion = quasi_shuffle(u, w);
        for (const auto& [v, c] : expansion.terms()) rhs += c * phi(v);
        if (lhs != rhs) r.multiplicativity.push_back({u, w, lhs, rhs});
    }
    r.in_group = r.nonvanishing.empty() && r.multiplicativity.empty();
    return r;
}

struct TransferBetweenResult {
    Character<Rational> phi;
    TransferReport report;
};

/// phi = alpha * beta^{-1}, the unique transfer with alpha = phi * beta.
inline TransferBetweenResult transfer_between(const CharacterTable& alpha,
                                              const CharacterTable& beta) {
    if (alpha.alphabet != beta.alphabet)
        fail(errc::invalid_solution, "tables are over different alphabets");
    const Bound common{std::min(alpha.bound.max_length, beta.bound.max_length),
                       std::min(alpha.bound.max_abs_weight, beta.bound.max_abs_weight)};
    for (const CharacterTable* t : {&alpha, &beta}) {
        const SolutionReport rep = verify_solution(*t);
        if (!rep.passed)
            fail(errc::invalid_solution, "table '" + t->name + "' is not a solution: " + rep.summary());
    }
    Character<Rational> phi = convolve(table_character(alpha), inverse(table_character(beta)));
    TransferReport report = check_transfer(phi, alpha.alphabet, common);
    return {std::move(phi), std::move(report)};
}

// ---------------------------------------------------------------------------
// Transfer characters from infinitesimal seeds.
// ---------------------------------------------------------------------------

struct InfinitesimalSeed {
    std::map<Word, Rational> support;
};

struct TransferCharacter {
    Character<Rational> phi;
    InfinitesimalSeed projected; // seed after annihilating pi_1(N)
};

// Realises the identification of the renormalisation group with linear maps
// on W: project the seed functional f so it annihilates
// span{ pi_1(w) : w non-singular, w within bound } (pi_1 preserves the
// letter sum and never increases length, so the projection splits into
// finite letter-sum blocks), then exponentiate delta = f o pi_1.
inline TransferCharacter make_transfer(const InfinitesimalSeed& seed, Alphabet alphabet,
                                       const Bound& bound, std::string name = "phi") {
    const std::vector<Word> words = enumerate_alphabet_words(alphabet, bound);
    for (const auto& [w, c] : seed.support)
        if (!word_in_bound(w, alphabet, bound))
            fail(errc::domain_error, "seed word [" + w.str() + "] outside the bound");

    std::map<Letter, std::vector<Word>> blocks;
    for (const Word& w : words) blocks[w.letter_sum()].push_back(w);

    std::map<Word, Rational> projected;
    for (const auto& [sum, block] : blocks) {
        std::map<Word, std::size_t> index;
        for (std::size_t i = 0; i < block.size(); ++i) index[block[i]] = i;

        RationalMatrix constraints;
        bool any = false;
        for (const Word& w : block) {
            if (!is_non_singular(w).non_singular) continue;
            std::vector<Rational> row(block.size());
            const LinComb image = eulerian_idempotent(w, ProductMode::QuasiShuffle);
            for (const auto& [v, c] : image.terms()) {
                auto it = index.find(v);
                if (it == index.end())
                    fail(errc::domain_error, "pi_1 left its letter-sum block at [" + v.str() + "]");
                row[it->second] = c;
            }
            constraints.append_row(row);
            any = true;
        }

        std::vector<Rational> f(block.size());
        for (std::size_t i = 0; i < block.size(); ++i) {
            auto it = seed.support.find(block[i]);
            if (it != seed.support.end()) f[i] = it->second;
        }
        if (any) {
            const RowReduction red = row_reduce(constraints);
            std::vector<bool> is_pivot(block.size(), false);
            for (std::size_t c : red.pivots) is_pivot[c] = true;
            // A functional g annihilates the row span iff, for every rref row
            // r with pivot p, g(p) = -sum_{j not pivot} r[j] g(j). Keep the
            // seed on free coordinates and force the pivot coordinates.
            for (std::size_t r = 0; r < red.rank; ++r) {
                Rational forced;
                for (std::size_t j = 0; j < block.size(); ++j)
                    if (!is_pivot[j] && red.rref.at(r, j) != 0) forced -= red.rref.at(r, j) * f[j];
                f[red.pivots[r]] = forced;
            }
        }
        for (std::size_t i = 0; i < block.size(); ++i)
            if (f[i] != 0) projected[block[i]] = f[i];
    }

    auto projected_ptr = std::make_shared<std::map<Word, Rational>>(projected);
    auto delta = [projected_ptr](const Word& w) {
        Rational acc;
        const LinComb image = eulerian_idempotent(w, ProductMode::QuasiShuffle);
        for (const auto& [v, c] : image.terms()) {
            auto it = projected_ptr->find(v);
            if (it != projected_ptr->end()) acc += c * it->second;
        }
        return acc;
    };
    TransferCharacter out{exp_convolution<Rational>(std::move(name), delta, bound.max_length),
                          InfinitesimalSeed{std::move(projected)}};
    return out;
}

/// Left action (phi, alpha) -> phi * alpha of the renormalisation group on
/// solutions; the result is verified to be a solution again.
inline CharacterTable act(const Character<Rational>& phi, const CharacterTable& alpha) {
    {
        const SolutionReport rep = verify_solution(alpha);
        if (!rep.passed)
            fail(errc::invalid_solution, "table '" + alpha.name + "': " + rep.summary());
    }
    {
        const TransferReport rep = check_transfer(phi, alpha.alphabet, alpha.bound);
        if (!rep.in_group)
            fail(errc::invalid_transfer,
                 "'" + phi.name() + "' is not a transfer character on the bound of '" +
                     alpha.name + "'");
    }
    const Character<Rational> composed = convolve(phi, table_character(alpha));
    CharacterTable out;
    out.name = phi.name() + "*" + alpha.name;
    out.alphabet = alpha.alphabet;
    out.bound = alpha.bound;
    out.lambda_convention = alpha.lambda_convention;
    out.provenance = "action";
    for (const Word& w : enumerate_alphabet_words(alpha.alphabet, alpha.bound))
        out.values[w] = composed(w);
    const SolutionReport rep = verify_solution(out);
    if (!rep.passed)
        fail(errc::invalid_solution, "action left the solution set: " + rep.summary());
    return out;
}

/// Deterministic pseudo-random transfer seed over the bound (small
/// rationals), for reproducible orbit experiments.
inline InfinitesimalSeed random_seed(Alphabet alphabet, const Bound& bound, std::uint64_t seed,
                                     std::size_t support_size = 6) {
    // xorshift-style generator, fixed across platforms
    std::uint64_t state = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    };
    const std::vector<Word> words = enumerate_alphabet_words(alphabet, bound);
    InfinitesimalSeed s;
    for (std::size_t i = 0; i < support_size && !words.empty(); ++i) {
        const Word& w = words[next() % words.size()];
        const long num = static_cast<long>(next() % 7) - 3;
        const long den = static_cast<long>(next() % 4) + 1;
        if (num != 0) s.support[w] = Rational(num, den);
    }
    return s;
}

} // namespace mzvrg
