#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "mzvrg/characters.hpp"
#include "mzvrg/json_io.hpp"
#include "mzvrg/quotient.hpp"

// Acceptance suite: one runner per criterion, exact tolerances pinned in
// code. `selftest --level quick` runs the sub-minute subset; `full` runs
// everything.

namespace mzvrg::selftest {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

enum class Level { Quick, Full };

namespace detail {

inline std::vector<Word> all_words(unsigned max_len, Letter lo, Letter hi) {
    std::vector<Word> out;
    for (unsigned d = 1; d <= max_len; ++d) for_each_word(d, lo, hi, [&](const Word& w) {
        out.push_back(w);
    });
    return out;
}

inline std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace detail

// 1. Depth-1 renormalisation matches zeta(-k) = -B_{k+1}/(k+1), k = 1..6.
inline CriterionResult criterion_depth1() {
    CriterionResult r;
    r.id = 1;
    r.name = "depth-1 renormalisation = -B_{k+1}/(k+1), k=1..6";
    r.pass = true;
    std::ostringstream os;
    for (unsigned k = 1; k <= 6; ++k) {
        const Rational got = renormalised_value(Word{-static_cast<Letter>(k)}, SchemeKernel::gz());
        const Rational expect = riemann_zeta_nonpositive(k);
        if (got != expect) {
            r.pass = false;
            os << " z_-" << k << ": " << got.str() << " != " << expect.str() << ";";
        }
    }
    r.detail = r.pass ? "6 exact values" : os.str();
    return r;
}

// 2. Depth-2 continuation compatibility for odd k1+k2 <= 9, k1 >= 1, k2 >= 0.
inline CriterionResult criterion_depth2() {
    CriterionResult r;
    r.id = 2;
    r.name = "depth-2 continuation compatibility (odd weight <= 9)";
    r.pass = true;
    std::ostringstream os;
    int checked = 0;
    for (Letter k1 = 1; k1 <= 9; ++k1)
        for (Letter k2 = 0; k1 + k2 <= 9; ++k2) {
            if ((k1 + k2) % 2 == 0) continue;
            const Word w{-k1, -k2};
            const Rational expect = continuation_value(w);
            Rational half = bernoulli(static_cast<unsigned>(k1 + k2 + 1)) / Rational(k1 + k2 + 1) / 2;
            if (k2 == 0) half *= 2;
            const Rational got = renormalised_value(w, SchemeKernel::gz());
            ++checked;
            if (got != expect || expect != half) {
                r.pass = false;
                os << " [" << w.str() << "]: " << got.str() << " vs " << expect.str() << ";";
            }
        }
    r.detail = r.pass ? std::to_string(checked) + " words exact (zero letters via damping directions)"
                      : os.str();
    return r;
}

// 3. The published GZ value at (-1,-3) under at least one lambda convention.
inline CriterionResult criterion_published_value() {
    CriterionResult r;
    r.id = 3;
    r.name = "zeta_GZ(-1,-3) = 83/64512";
    const Rational target(83, 64512);
    const Rational left = renormalised_value(Word{-1, -3}, SchemeKernel::gz());
    const Rational right = renormalised_value(Word{-1, -3}, SchemeKernel::gz().flipped());
    r.pass = left == target || right == target;
    std::ostringstream os;
    os << "left: " << left.str() << ", right: " << right.str()
       << (left == target ? "; default convention 'left' reproduces the value" : "");
    r.detail = os.str();
    return r;
}

// 4. EMS: multiplicativity of the Laurent character is mandatory; the
// printed value 121/94080 is stretch, with the depth-1 compatibility
// report as the mandatory fallback artifact.
inline CriterionResult criterion_ems(const std::string& artifact_dir) {
    CriterionResult r;
    r.id = 4;
    r.name = "EMS(t=1): stuffle multiplicativity + compatibility report";
    std::ostringstream os;

    bool mult_ok = true;
    const SchemeKernel ems = SchemeKernel::ems();
    const std::vector<Word> words = enumerate_alphabet_words(
        Alphabet::StrictlyNegative, {static_cast<std::size_t>(6), 5});
    std::vector<Word> small;
    for (const Word& w : words) {
        bool in_range = true;
        for (Letter k : w.letters()) in_range &= k >= -3;
        if (in_range) small.push_back(w);
    }
    int pairs = 0;
    for (std::size_t i = 0; i < small.size() && mult_ok; ++i)
        for (std::size_t j = i; j < small.size() && mult_ok; ++j) {
            const Word &u = small[i], &w = small[j];
            if (u.abs_weight() + w.abs_weight() > 6) continue;
            const Exp window = static_cast<Exp>(u.abs_weight() + w.abs_weight()) + 3;
            const auto lhs = regularised_mzv(u, ems, window) * regularised_mzv(w, ems, window);
            TruncatedLaurent rhs = TruncatedLaurent::zero();
            const LinComb expansion = quasi_shuffle(u, w);
            for (const auto& [v, c] : expansion.terms())
                rhs = rhs + regularised_mzv(v, ems, window).scale(c);
            ++pairs;
            if (!agree_within_truncation(lhs, rhs)) {
                mult_ok = false;
                os << "multiplicativity fails at [" << u.str() << "] x [" << w.str() << "]; ";
            }
        }
    os << pairs << " stuffle pairs checked; ";

    const Rational value = renormalised_value(Word{-1, -3}, ems);
    const bool stretch = value == Rational(121, 94080);
    os << "value at (-1,-3): " << value.str() << (stretch ? " == 121/94080 (stretch met); "
                                                          : " != 121/94080 (stretch not met); ");
    bool artifact_ok = true;
    if (!stretch) {
        const EmsCompatReport rep = ems_depth1_check(Rational(1));
        json j = to_json(rep);
        j["note"] = "pipeline built from the printed kernel; depth-1 value disagrees with the "
                    "continuation requirement under both lambda conventions";
        j["value_at_-1_-3"] = to_string(value);
        const std::string path = artifact_dir + "/ems_compatibility_report.json";
        try {
            save_json_file(path, j);
            os << "report written to " << path;
        } catch (const error& e) {
            artifact_ok = false;
            os << "report could not be written: " << e.what();
        }
    }
    r.pass = mult_ok && artifact_ok;
    r.detail = os.str();
    return r;
}

// 5. EMS t-family pole structure at (-1,-3).
inline CriterionResult criterion_ems_family() {
    CriterionResult r;
    r.id = 5;
    r.name = "EMS(t) pole structure at (-1,-3)";
    std::ostringstream os;
    bool ok = true;

    // lambda^{-1} coefficient against the independent finite-difference form
    //   P(t) = 1/2 sum_{s=0}^{4} (-1)^s C(4,s)/(4t+s),
    // whose denominator divides prod_{j=0..4}(4t+j) as a rational function.
    const auto closed_form = [](const Rational& t) {
        Rational acc;
        for (int s = 0; s <= 4; ++s) {
            Rational term =
                Rational(binomial(4, static_cast<unsigned>(s))) / (Rational(4) * t + Rational(s));
            acc += (s % 2 ? -term : term);
        }
        return acc / 2;
    };
    for (const Rational& t : {Rational(1), Rational(2), Rational(1, 2)}) {
        const auto d = regularised_mzv_detailed(Word{-1, -3}, SchemeKernel::ems(t));
        if (d.series.coef(-1) != closed_form(t)) {
            ok = false;
            os << "lambda^-1 mismatch at t=" << t.str() << "; ";
        }
        // every rate entering the computation is c*t + j, c in {1,3,4}, 0<=j<=4
        for (const Rational& rate : d.final_rates) {
            bool allowed = false;
            for (int c : {1, 3, 4})
                for (int j = 0; j <= 4; ++j)
                    if (rate == Rational(c) * t + Rational(j)) allowed = true;
            if (!allowed) {
                ok = false;
                os << "unexpected rate " << rate.str() << " at t=" << t.str() << "; ";
            }
        }
    }

    // P(t) * 2 * prod(4t+j) must be a polynomial in t of degree <= 4:
    // interpolate on 5 sample points and confirm on 5 more.
    std::vector<Rational> ts, qs;
    for (int i = 1; i <= 10; ++i) {
        const Rational t = i <= 8 ? Rational(i) : (i == 9 ? Rational(1, 3) : Rational(2, 5));
        Rational prod(2);
        for (int j = 0; j <= 4; ++j) prod *= Rational(4) * t + Rational(j);
        ts.push_back(t);
        qs.push_back(closed_form(t) * prod);
    }
    // Lagrange fit through the first 5 points, evaluate at the rest
    const auto fit_eval = [&](const Rational& x) {
        Rational acc;
        for (int i = 0; i < 5; ++i) {
            Rational term = qs[static_cast<std::size_t>(i)];
            for (int j = 0; j < 5; ++j) {
                if (i == j) continue;
                term *= (x - ts[static_cast<std::size_t>(j)]) /
                        (ts[static_cast<std::size_t>(i)] - ts[static_cast<std::size_t>(j)]);
            }
            acc += term;
        }
        return acc;
    };
    for (std::size_t i = 5; i < ts.size(); ++i)
        if (fit_eval(ts[i]) != qs[i]) {
            ok = false;
            os << "denominator check: P(t)*2*prod(4t+j) is not a degree-<=4 polynomial; ";
        }

    r.pass = ok;
    r.detail = ok ? "closed form, rate families {t+j, 3t+j, 4t+j}, and denominator | prod(4t+j) confirmed"
                  : os.str();
    return r;
}

// 6. Hopf axiom suite.
inline CriterionResult criterion_hopf_axioms() {
    CriterionResult r;
    r.id = 6;
    r.name = "Hopf axioms (antipode, coproduct, Hoffman isomorphism)";
    std::ostringstream os;
    bool ok = true;

    // S*Id = Id*S = u eps, length <= 4, letters in [-3,3]
    for (const Word& w : detail::all_words(4, -3, 3)) {
        LinComb left, right;
        for (std::size_t i = 0; i <= w.length(); ++i) {
            left += quasi_shuffle(antipode(w.prefix(i)), LinComb(w.suffix_from(i)));
            right += quasi_shuffle(LinComb(w.prefix(i)), antipode(w.suffix_from(i)));
        }
        if (!left.is_zero() || !right.is_zero()) {
            ok = false;
            os << "antipode axiom fails at [" << w.str() << "]; ";
            break;
        }
    }

    // recursive == closed-form antipode, length <= 5, letters in [-4,4]
    for (const Word& w : detail::all_words(5, -4, 4)) {
        if (antipode_closed_form(w) != antipode_recursive(w)) {
            ok = false;
            os << "antipode modes disagree at [" << w.str() << "]; ";
            break;
        }
    }

    // coassociativity, length <= 4
    for (const Word& w : detail::all_words(4, -2, 2)) {
        std::map<std::tuple<Word, Word, Word>, Rational> l, rr;
        for (const auto& t : coproduct(w)) {
            for (const auto& s : coproduct(t.left)) l[{s.left, s.right, t.right}] += s.coef * t.coef;
            for (const auto& s : coproduct(t.right)) rr[{t.left, s.left, s.right}] += s.coef * t.coef;
        }
        if (l != rr) {
            ok = false;
            os << "coassociativity fails at [" << w.str() << "]; ";
            break;
        }
    }

    // bialgebra law on pairs of words of length <= 3 (letters in [-2,2])
    {
        const auto ws = detail::all_words(3, -2, 2);
        for (std::size_t i = 0; i < ws.size() && ok; ++i)
            for (std::size_t j = i; j < ws.size(); ++j) {
                const Word &u = ws[i], &v = ws[j];
                std::map<std::pair<Word, Word>, Rational> lhs, rhs;
                const LinComb uv = quasi_shuffle(u, v);
                for (const auto& [p, c] : uv.terms())
                    for (const auto& t : coproduct(p)) lhs[{t.left, t.right}] += c * t.coef;
                for (const auto& tu : coproduct(u))
                    for (const auto& tv : coproduct(v)) {
                        const LinComb lefts = quasi_shuffle(tu.left, tv.left);
                        const LinComb rights = quasi_shuffle(tu.right, tv.right);
                        for (const auto& [wl, cl] : lefts.terms())
                            for (const auto& [wr, cr] : rights.terms())
                                rhs[{wl, wr}] += cl * cr;
                    }
                if (lhs != rhs) {
                    ok = false;
                    os << "bialgebra law fails at [" << u.str() << "] x [" << v.str() << "]; ";
                    break;
                }
            }
    }

    // exp_H/log_H inverse (length <= 5) and isomorphism (total length <= 4)
    for (const Word& w : detail::all_words(5, -2, 2)) {
        if (hoffman_log(hoffman_exp(w)) != LinComb(w) || hoffman_exp(hoffman_log(w)) != LinComb(w)) {
            ok = false;
            os << "Hoffman maps are not mutually inverse at [" << w.str() << "]; ";
            break;
        }
    }
    {
        const auto ws = detail::all_words(3, -2, 2);
        for (std::size_t i = 0; i < ws.size() && ok; ++i)
            for (std::size_t j = i; j < ws.size(); ++j) {
                const Word &u = ws[i], &v = ws[j];
                if (u.length() + v.length() > 4) continue;
                if (hoffman_exp(shuffle(u, v)) !=
                    quasi_shuffle(hoffman_exp(u), hoffman_exp(v))) {
                    ok = false;
                    os << "Hoffman isomorphism fails at [" << u.str() << "] x [" << v.str() << "]; ";
                    break;
                }
            }
    }

    r.pass = ok;
    r.detail = ok ? "antipode axiom/equality, coassociativity, bialgebra law, Hoffman maps" : os.str();
    return r;
}

// 7. Eulerian idempotent suite.
inline CriterionResult criterion_eulerian() {
    CriterionResult r;
    r.id = 7;
    r.name = "Eulerian idempotent, descent formulas, depth-3 relations";
    std::ostringstream os;
    bool ok = true;

    for (auto mode : {ProductMode::QuasiShuffle, ProductMode::Shuffle}) {
        for (const Word& w : detail::all_words(4, -2, 2)) {
            const LinComb once = eulerian_idempotent(w, mode);
            if (eulerian_idempotent(once, mode) != once) {
                ok = false;
                os << "pi1 not idempotent at [" << w.str() << "] (" << mode_name(mode) << "); ";
                break;
            }
        }
        const auto ws = detail::all_words(2, -2, 2);
        for (std::size_t i = 0; i < ws.size() && ok; ++i)
            for (std::size_t j = i; j < ws.size(); ++j) {
                if (ws[i].length() + ws[j].length() > 4) continue;
                if (eulerian_idempotent(product(mode, LinComb(ws[i]), LinComb(ws[j])), mode) !=
                    LinComb::zero()) {
                    ok = false;
                    os << "pi1 does not kill [" << ws[i].str() << "]." << "[" << ws[j].str()
                       << "] (" << mode_name(mode) << "); ";
                    break;
                }
            }
    }

    for (const Word& w : detail::all_words(4, -2, 2))
        if (pi1_descent(w) != eulerian_idempotent(w, ProductMode::Shuffle)) {
            ok = false;
            os << "descent formula differs from log* Id at [" << w.str() << "]; ";
            break;
        }

    std::uint64_t rng = 0x5eed;
    for (int i = 0; i < 5; ++i) {
        const Letter a = static_cast<Letter>(detail::splitmix(rng) % 13) - 6;
        const Letter b = static_cast<Letter>(detail::splitmix(rng) % 13) - 6;
        const Letter c = i == 4 ? a : static_cast<Letter>(detail::splitmix(rng) % 13) - 6;
        if (!verify_depth3_identities(a, b, c)) {
            ok = false;
            os << "depth-3 identities fail at (" << a << "," << b << "," << c << "); ";
        }
    }

    LinComb expect;
    expect.add(Word{2, 4, 1, 3}, Rational(1, 6));
    expect.add(Word{3, 1, 4, 2}, Rational(-1, 6));
    if (remark_lie_check() != expect) {
        ok = false;
        os << "length-4 discrepancy term is wrong; ";
    }
    if (eulerian_coefficient(Permutation{{2, 4, 1, 3}}) != Rational(-1, 12) ||
        eulerian_coefficient(Permutation{{3, 1, 4, 2}}) != Rational(1, 12)) {
        ok = false;
        os << "descent coefficients of (2413)/(3142) are wrong; ";
    }

    r.pass = ok;
    r.detail = ok ? "idempotency, product annihilation, descent = log* Id, depth-3 lines, remark"
                  : os.str();
    return r;
}

// 8. Coideal suite.
inline CriterionResult criterion_coideal() {
    CriterionResult r;
    r.id = 8;
    r.name = "coideal N: prefixes, contractions, log_H stability, emptiness";
    std::ostringstream os;
    bool ok = true;
    std::size_t count = 0;
    for (unsigned depth = 1; depth <= 4; ++depth) {
        for (const Word& w : enumerate_non_singular(depth, -4, 4)) {
            ++count;
            for (std::size_t i = 1; i < w.length() && ok; ++i)
                if (!is_non_singular(w.prefix(i)).non_singular) {
                    ok = false;
                    os << "prefix closure fails at [" << w.str() << "]; ";
                }
            for (const auto& I : compositions(static_cast<int>(w.length())))
                if (!is_non_singular(contract(w, I)).non_singular) {
                    ok = false;
                    os << "contraction stability fails at [" << w.str() << "]; ";
                    break;
                }
            if (!in_coideal_N(hoffman_log(w))) {
                ok = false;
                os << "log_H leaves N at [" << w.str() << "]; ";
            }
            if (!ok) break;
        }
        if (!ok) break;
    }
    if (ok) {
        if (!enumerate_non_singular(3, -6, 0).empty() || !enumerate_non_singular(4, -6, 0).empty()) {
            ok = false;
            os << "a non-positive non-singular word of depth 3 or 4 exists; ";
        }
    }
    r.pass = ok;
    r.detail = ok ? std::to_string(count) + " non-singular words scanned over [-4,4], depths 1-4"
                  : os.str();
    return r;
}

// 9. Group action suite.
inline CriterionResult criterion_group_action() {
    CriterionResult r;
    r.id = 9;
    r.name = "renormalisation group: subgroup law, freeness, well-definedness";
    std::ostringstream os;
    bool ok = true;

    const Alphabet alph = Alphabet::StrictlyNegative;
    const Bound bound{3, 12}; // covers every word over [-4,-1] of length <= 3
    Bound seed_bound{3, 12};

    // seeds over [-4,-1], length <= 3
    InfinitesimalSeed s1, s2;
    std::uint64_t rng = 20240901;
    const std::vector<Word> pool = [&] {
        std::vector<Word> out;
        for (const Word& w : enumerate_alphabet_words(alph, seed_bound)) {
            bool in_range = true;
            for (Letter k : w.letters()) in_range &= k >= -4;
            if (in_range) out.push_back(w);
        }
        return out;
    }();
    for (int i = 0; i < 6; ++i) {
        const long n1 = static_cast<long>(detail::splitmix(rng) % 7) - 3;
        const long n2 = static_cast<long>(detail::splitmix(rng) % 7) - 3;
        const Word& w1 = pool[detail::splitmix(rng) % pool.size()];
        const Word& w2 = pool[detail::splitmix(rng) % pool.size()];
        if (n1 != 0) s1.support[w1] = Rational(n1, static_cast<long>(detail::splitmix(rng) % 4 + 1));
        if (n2 != 0) s2.support[w2] = Rational(n2, static_cast<long>(detail::splitmix(rng) % 4 + 1));
    }

    const auto phi1 = make_transfer(s1, alph, bound, "phi1");
    const auto phi2 = make_transfer(s2, alph, bound, "phi2");
    for (const auto* phi : {&phi1.phi, &phi2.phi}) {
        const TransferReport rep = check_transfer(*phi, alph, bound);
        if (!rep.in_group) {
            ok = false;
            os << phi->name() << " is not in T; ";
        }
    }
    const auto composed = convolve(phi1.phi, phi2.phi);
    if (!check_transfer(composed, alph, bound).in_group) {
        ok = false;
        os << "phi1*phi2 is not in T; ";
    }
    const auto inv1 = inverse(phi1.phi);
    if (!check_transfer(inv1, alph, bound).in_group) {
        ok = false;
        os << "phi1^{-1} is not in T; ";
    }

    const auto gz = renormalised_character(SchemeKernel::gz(), alph, bound);
    const auto same = act(unit_character<Rational>(bound.max_length), gz);
    if (same.values != gz.values) {
        ok = false;
        os << "act(e, alpha) != alpha; ";
    }
    const auto moved = act(phi1.phi, gz); // act() verifies the result internally
    const auto recovered = transfer_between(moved, gz);
    for (const Word& w : enumerate_alphabet_words(alph, bound))
        if (recovered.phi(w) != phi1.phi(w)) {
            ok = false;
            os << "freeness fails at [" << w.str() << "]; ";
            break;
        }

    r.pass = ok;
    r.detail = ok ? "transfers vanish on N, compose in T, act freely, and preserve solutions"
                  : os.str();
    return r;
}

// 10. Birkhoff identity and counterterm shapes on every GZ word of
// abs weight <= 6.
inline CriterionResult criterion_birkhoff() {
    CriterionResult r;
    r.id = 10;
    r.name = "Birkhoff identity psi_- * psi = psi_+ (GZ, weight <= 6)";
    std::ostringstream os;
    bool ok = true;

    const Bound bound{6, 6};
    const auto words = enumerate_alphabet_words(Alphabet::StrictlyNegative, bound);
    // uniform window: the pole budget of a weight-6 word is at most 12
    auto solver = std::make_shared<BirkhoffSolver>(scheme_character(SchemeKernel::gz(), 13));
    const auto psi = solver->psi();
    const auto minus = minus_character(solver);
    const auto plus = plus_character(solver);

    for (const Word& w : words) {
        TruncatedLaurent conv = TruncatedLaurent::zero();
        for (std::size_t i = 0; i <= w.length(); ++i)
            conv = conv + minus(w.prefix(i)) * psi(w.suffix_from(i));
        const auto p = plus(w);
        if (!agree_within_truncation(conv, p)) {
            ok = false;
            os << "psi_-*psi != psi_+ at [" << w.str() << "]; ";
            break;
        }
        if (p.has_pole()) {
            ok = false;
            os << "psi_+ has a pole at [" << w.str() << "]; ";
            break;
        }
        const auto m = minus(w);
        if (!(m == m.pole_part())) { // counterterm values lie in A_- on ker(eps)
            ok = false;
            os << "psi_- leaves k1 + A_- at [" << w.str() << "]; ";
            break;
        }
    }

    // multiplicativity of both factors on stuffle pairs within the bound
    if (ok) {
        for (const auto& [u, w] : stuffle_pairs_in_bound(Alphabet::StrictlyNegative, bound)) {
            for (const auto* chi : {&minus, &plus}) {
                const auto lhs = (*chi)(u) * (*chi)(w);
                TruncatedLaurent rhs = TruncatedLaurent::zero();
                const LinComb expansion = quasi_shuffle(u, w);
                for (const auto& [v, c] : expansion.terms())
                    rhs = rhs + (*chi)(v).scale(c);
                if (!agree_within_truncation(lhs, rhs)) {
                    ok = false;
                    os << "factor " << (*chi).name() << " not multiplicative at [" << u.str()
                       << "] x [" << w.str() << "]; ";
                    break;
                }
            }
            if (!ok) break;
        }
    }

    r.pass = ok;
    r.detail = ok ? std::to_string(words.size()) + " words, counterterm shapes and factor "
                    "multiplicativity confirmed"
                  : os.str();
    return r;
}

// 11. Verifier discrimination.
inline CriterionResult criterion_verifier() {
    CriterionResult r;
    r.id = 11;
    r.name = "verify_solution passes GZ and localises every corruption";
    std::ostringstream os;
    bool ok = true;

    const auto gz = renormalised_character(SchemeKernel::gz(), Alphabet::StrictlyNegative, {3, 6});
    if (!verify_solution(gz).passed) {
        ok = false;
        os << "GZ table rejected; ";
    }

    for (const auto& [word, value] : gz.values) {
        auto broken = gz;
        broken.values[word] = value + 1;
        const auto rep = verify_solution(broken);
        if (rep.passed) {
            ok = false;
            os << "perturbation at [" << word.str() << "] went unnoticed; ";
            continue;
        }
        bool localised = false;
        for (const auto& v : rep.continuation)
            if (v.w == word) localised = true;
        for (const auto& v : rep.multiplicativity) {
            if (v.u == word || v.w == word) localised = true;
            const LinComb expansion = quasi_shuffle(v.u, v.w);
            for (const auto& [t, c] : expansion.terms())
                if (t == word) localised = true;
        }
        if (!localised) {
            ok = false;
            os << "witness for [" << word.str() << "] does not mention it; ";
        }
    }

    // a hand-made stuffle violation
    CharacterTable bad;
    bad.name = "bad";
    bad.alphabet = Alphabet::StrictlyNegative;
    bad.bound = {2, 2};
    bad.values[Word{-1}] = Rational(-1, 12);
    bad.values[Word{-2}] = Rational(0);
    bad.values[Word{-1, -1}] = Rational(1, 4); // should be 1/288
    if (verify_solution(bad).passed) {
        ok = false;
        os << "hand-made stuffle violation accepted; ";
    }

    r.pass = ok;
    r.detail = ok ? "table of " + std::to_string(gz.values.size()) +
                        " words; every single-value perturbation caught with a witness"
                  : os.str();
    return r;
}

// 12. Numeric oracle at lambda = -1/16.
inline CriterionResult criterion_numeric_oracle() {
    CriterionResult r;
    r.id = 12;
    r.name = "numeric oracle: engine vs brute-force sums at lambda=-1/16";
    std::ostringstream os;
    bool ok = true;
    const double lam = -1.0 / 16.0;

    std::uint64_t rng = 0xfeedbeef;
    std::vector<Word> sample;
    while (sample.size() < 10) {
        const unsigned depth = 1 + detail::splitmix(rng) % 3;
        std::vector<Letter> ls;
        for (unsigned i = 0; i < depth; ++i)
            ls.push_back(-1 - static_cast<Letter>(detail::splitmix(rng) % 3));
        Word w(std::move(ls));
        bool dup = false;
        for (const auto& v : sample) dup |= v == w;
        if (!dup) sample.push_back(std::move(w));
    }

    for (const Word& w : sample) {
        const auto series = regularised_mzv(w, SchemeKernel::gz(), pole_budget(w) + 4);
        const double engine = series.evaluate(lam);

        // brute force with an explicit geometric tail bound < 1e-10
        int big = 64;
        const double ratio = std::exp(lam);
        double tail = 1;
        const auto term_bound = [&](int m) {
            double t = std::exp(lam * m);
            for (std::size_t i = 0; i < w.length(); ++i)
                for (Letter k = 0; k < -w.letter(i); ++k) t *= m;
            for (std::size_t i = 1; i < w.length(); ++i) t *= m; // inner multiplicities
            return t;
        };
        while (tail > 1e-10) {
            big *= 2;
            tail = term_bound(big) / (1 - ratio);
        }
        std::vector<double> suffix(static_cast<std::size_t>(big) + 1, 1.0);
        for (std::size_t i = w.length(); i-- > 0;) {
            std::vector<double> next(suffix.size(), 0.0);
            double run = 0;
            for (int m = 1; m <= big; ++m) {
                double f = std::exp(-w.letter(i) * lam * m);
                for (Letter k = 0; k < -w.letter(i); ++k) f *= m;
                run += f * suffix[static_cast<std::size_t>(m) - 1];
                next[static_cast<std::size_t>(m)] = run;
            }
            suffix = std::move(next);
        }
        const double brute = suffix.back();
        if (!(std::abs(engine - brute) <= 1e-6 * std::abs(brute))) {
            ok = false;
            os << "[" << w.str() << "]: engine " << engine << " vs brute " << brute << "; ";
        }
    }

    r.pass = ok;
    r.detail = ok ? "10 seeded words, relative error < 1e-6" : os.str();
    return r;
}

// 13. Rota-Baxter identity for minimal subtraction on 100 seeded pairs.
inline CriterionResult criterion_rota_baxter() {
    CriterionResult r;
    r.id = 13;
    r.name = "Rota-Baxter identity of minimal subtraction (100 pairs)";
    std::ostringstream os;
    bool ok = true;
    std::uint64_t rng = 0xab57ac7;
    const auto random_series = [&rng]() {
        const int pole = static_cast<int>(detail::splitmix(rng) % 5);
        const int n = pole + 7 + static_cast<int>(detail::splitmix(rng) % 4);
        std::vector<Rational> c;
        for (int i = 0; i < n; ++i) {
            const long num = static_cast<long>(detail::splitmix(rng) % 11) - 5;
            const long den = static_cast<long>(detail::splitmix(rng) % 6) + 1;
            c.push_back(Rational(num, den));
        }
        return TruncatedLaurent::window(-pole, std::move(c), -pole + n);
    };
    for (int i = 0; i < 100; ++i) {
        const auto a = random_series(), b = random_series();
        const auto pi = [](const TruncatedLaurent& x) { return x.pole_part(); };
        const auto lhs = pi(a) * pi(b);
        const auto rhs = pi(pi(a) * b) + pi(a * pi(b)) - pi(a * b);
        if (!agree_within_truncation(lhs, rhs)) {
            ok = false;
            os << "pair " << i << " violates the identity; ";
        }
    }
    r.pass = ok;
    r.detail = ok ? "poles of order <= 4, exact within truncation" : os.str();
    return r;
}

// 14. W' basis reports over [-4,4].
inline CriterionResult criterion_wprime() {
    CriterionResult r;
    r.id = 14;
    r.name = "W' reports: depth 1-3 over [-4,4], discrepancies explained";
    std::ostringstream os;
    bool ok = true;

    const auto d1 = wprime_basis(1, -4, 4);
    if (d1.total_quotient_dim != 1 || d1.discrepancy_count != 0) {
        ok = false;
        os << "depth-1 quotient is not one-dimensional; ";
    }

    for (unsigned depth : {2u, 3u}) {
        const auto rep = wprime_basis(depth, -4, 4);
        std::size_t flagged = 0, mismatched_all_singular = 0, unexplained = 0;
        bool seen_one_minus_two = false;
        for (const auto& b : rep.blocks) {
            if (b.all_permutations_singular && b.discrepancy) ++mismatched_all_singular;
            if (b.discrepancy) {
                ++flagged;
                if (b.note.empty() || b.all_permutations_singular) ++unexplained;
                if (depth == 2 && b.block.multiset == std::vector<Letter>{-2, 1})
                    seen_one_minus_two = true;
            }
        }
        if (mismatched_all_singular != 0) {
            ok = false;
            os << "depth " << depth << ": an all-singular block misses its class; ";
        }
        if (unexplained != 0) {
            ok = false;
            os << "depth " << depth << ": " << unexplained << " unexplained mismatches; ";
        }
        if (depth == 2 && !seen_one_minus_two) {
            ok = false;
            os << "the {1,-2} discrepancy block is not flagged; ";
        }
        os << "depth " << depth << ": " << rep.blocks.size() << " blocks, quotient dim "
           << rep.total_quotient_dim << ", " << flagged << " flagged; ";
    }

    r.pass = ok;
    r.detail = os.str();
    return r;
}

inline std::vector<CriterionResult> run_acceptance(Level level, const std::string& artifact_dir) {
    using Runner = std::function<CriterionResult()>;
    const std::vector<std::pair<Runner, bool>> runners = {
        {criterion_depth1, true},
        {criterion_depth2, true},
        {criterion_published_value, true},
        {[&] { return criterion_ems(artifact_dir); }, true},
        {criterion_ems_family, true},
        {criterion_hopf_axioms, false},
        {criterion_eulerian, true},
        {criterion_coideal, true},
        {criterion_group_action, false},
        {criterion_birkhoff, false},
        {criterion_verifier, true},
        {criterion_numeric_oracle, true},
        {criterion_rota_baxter, true},
        {criterion_wprime, false},
    };
    std::vector<CriterionResult> out;
    int id = 0;
    for (const auto& [runner, quick] : runners) {
        ++id;
        if (level == Level::Quick && !quick) continue;
        const auto start = std::chrono::steady_clock::now();
        CriterionResult res;
        try {
            res = runner();
        } catch (const std::exception& e) {
            res.id = id;
            res.name = "criterion " + std::to_string(id);
            res.pass = false;
            res.detail = std::string("threw: ") + e.what();
        }
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        out.push_back(std::move(res));
    }
    return out;
}

} // namespace mzvrg::selftest
