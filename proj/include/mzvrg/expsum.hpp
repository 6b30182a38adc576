#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <tuple>
#include <utility>
#include <vector>

#include "mzvrg/exact_arith.hpp"
#include "mzvrg/laurent.hpp"
#include "mzvrg/word.hpp"

namespace mzvrg {

// Regularisation kernels. Letters map to factors of the nested sum
//   zeta_lambda(k_1,...,k_n) = sum_{m_1 > ... > m_n > 0} prod_i f_{lambda,k_i}(m_i):
//
//   GZ      z_l -> exp(-l x lambda) / x^l          (l <= 0)
//   EMS(t)  z_l -> q^{t|l|x} (1 - q^x)^{|l|},  q = e^lambda   (l < 0)
//
// with t = 1 the printed EMS kernel. Series are expansions "from the left"
// (the sums converge for Re(lambda) < 0); flip_lambda applies
// lambda -> -lambda to every kernel, giving the right-sided convention.
struct SchemeKernel {
    enum class Kind { GZ, EMS };

    Kind kind = Kind::GZ;
    Rational t = Rational(1);          // EMS family parameter, > 0
    bool flip_lambda = false;
    Rational gz_zero_rate = Rational(0); // auxiliary damping rate for z_0, see below

    static SchemeKernel gz() { return {}; }

    static SchemeKernel ems(Rational t_param = Rational(1)) {
        if (t_param <= 0) fail(errc::domain_error, "EMS parameter t must be > 0");
        return {Kind::EMS, std::move(t_param), false, Rational(0)};
    }

    SchemeKernel flipped(bool flip = true) const {
        SchemeKernel s = *this;
        s.flip_lambda = flip;
        return s;
    }

    /// GZ with the letter z_0 damped at an auxiliary rate rho > 0. The
    /// printed GZ kernel is constant at l = 0, so any word whose remaining
    /// outer sum starts with z_0 diverges; damping z_0 is the directional
    /// device that makes such words summable. Renormalised values at
    /// non-singular zero words do not depend on rho (checked by callers).
    SchemeKernel with_zero_rate(Rational rho) const {
        if (kind != Kind::GZ) fail(errc::domain_error, "zero-rate damping is a GZ device");
        if (rho <= 0) fail(errc::domain_error, "zero rate must be > 0");
        SchemeKernel s = *this;
        s.gz_zero_rate = std::move(rho);
        return s;
    }

    std::string name() const { return kind == Kind::GZ ? "gz" : "ems"; }

    std::string cache_key() const {
        std::ostringstream os;
        os << name();
        if (kind == Kind::EMS) os << ":t=" << t.str();
        os << ":" << (flip_lambda ? "right" : "left");
        if (gz_zero_rate != 0) os << ":rho=" << gz_zero_rate.str();
        return os.str();
    }
};

// One closed-form summand coef(lambda) * m^a * e^{b lambda m}; rate b >= 0.
struct ExpMonomial {
    Rational rate;
    int m_deg = 0;
    TruncatedLaurent coef;
};

// Finite sum of ExpMonomials with distinct (rate, m_deg) keys, kept in
// (rate, m_deg) order. Carrier of the partially summed nested sums.
class ExpPoly {
public:
    using Key = std::pair<Rational, int>;

    ExpPoly() = default;

    static ExpPoly term(Rational rate, int m_deg, TruncatedLaurent coef) {
        ExpPoly p;
        p.add(std::move(rate), m_deg, std::move(coef));
        return p;
    }

    bool empty() const { return terms_.empty(); }
    const std::map<Key, TruncatedLaurent>& terms() const { return terms_; }

    void add(Rational rate, int m_deg, const TruncatedLaurent& coef) {
        if (coef.is_zero()) return;
        Key k{std::move(rate), m_deg};
        auto it = terms_.find(k);
        if (it == terms_.end()) {
            terms_.emplace(std::move(k), coef);
        } else {
            it->second = it->second + coef;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    ExpPoly& operator+=(const ExpPoly& o) {
        for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
        return *this;
    }

    ExpPoly operator*(const ExpPoly& o) const {
        ExpPoly out;
        for (const auto& [k1, c1] : terms_)
            for (const auto& [k2, c2] : o.terms_)
                out.add(k1.first + k2.first, k1.second + k2.second, c1 * c2);
        return out;
    }

    ExpPoly scale(const TruncatedLaurent& s) const {
        ExpPoly out;
        for (const auto& [k, c] : terms_) out.add(k.first, k.second, c * s);
        return out;
    }

    ExpPoly scale(const Rational& s) const {
        ExpPoly out;
        for (const auto& [k, c] : terms_) out.add(k.first, k.second, c.scale(s));
        return out;
    }

    /// d/dlambda with m treated as a constant:
    /// c m^a e^{b lambda m} -> c' m^a e^{b lambda m} + b c m^{a+1} e^{b lambda m}.
    ExpPoly derive_lambda() const {
        ExpPoly out;
        for (const auto& [k, c] : terms_) {
            out.add(k.first, k.second, c.derive());
            if (k.first != 0) out.add(k.first, k.second + 1, c.scale(k.first));
        }
        return out;
    }

    std::vector<Rational> rates() const {
        std::vector<Rational> out;
        for (const auto& [k, c] : terms_)
            if (out.empty() || out.back() != k.first) out.push_back(k.first);
        return out;
    }

private:
    std::map<Key, TruncatedLaurent> terms_;
};

namespace detail {

/// e^{b lambda} with window [0, w).
inline TruncatedLaurent exp_series(const Rational& b, Exp w) {
    std::vector<Rational> c;
    Rational term(1);
    for (Exp n = 0; n < w; ++n) {
        c.push_back(term);
        term = term * b / Rational(n + 1);
    }
    return TruncatedLaurent::window(0, std::move(c), w);
}

/// 1/(1 - e^{b lambda}), a pole of order one; costs two orders of window.
inline TruncatedLaurent geometric_factor(const Rational& b, Exp w) {
    return (TruncatedLaurent::one() - exp_series(b, w)).invert();
}

/// G(b) = e^{b lambda}/(1 - e^{b lambda}) = sum_{m>=1} e^{b lambda m}.
inline TruncatedLaurent geometric_sum(const Rational& b, Exp w) {
    using Key = std::pair<Rational, Exp>;
    static std::map<Key, TruncatedLaurent> cache;
    static std::mutex mu;
    Key key{b, w};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    TruncatedLaurent r = exp_series(b, w) * geometric_factor(b, w);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::move(key), std::move(r)).first->second;
}

} // namespace detail

/// Kernel of a single letter as an ExpPoly in the inner summation index.
inline ExpPoly kernel_of_letter(const SchemeKernel& s, Letter l, Exp window) {
    const TruncatedLaurent one = TruncatedLaurent::one();
    if (s.kind == SchemeKernel::Kind::GZ) {
        if (l > 0)
            fail(errc::unsupported_letter, "GZ kernel is defined for letters <= 0, got z_" +
                                               std::to_string(l));
        if (l == 0) {
            if (s.gz_zero_rate > 0) return ExpPoly::term(s.gz_zero_rate, 0, one);
            return ExpPoly::term(Rational(0), 0, one);
        }
        return ExpPoly::term(Rational(-l), static_cast<int>(-l), one);
    }
    if (l >= 0)
        fail(errc::unsupported_letter, "EMS kernel is defined for letters < 0, got z_" +
                                           std::to_string(l));
    const unsigned k = static_cast<unsigned>(-l);
    ExpPoly out;
    for (unsigned j = 0; j <= k; ++j) {
        Rational c(binomial(k, j));
        if (j % 2) c = -c;
        out.add(s.t * k + j, 0, TruncatedLaurent::constant(c));
    }
    (void)window;
    return out;
}

// q with q(m) = sum_{k=1}^{m-1} p(k) for every integer m >= 1.
//
// Rate-0 terms sum by Faulhaber. A rate-b term c k^a e^{b lambda k} sums via
//   sum_{k=1}^{m-1} k^a x^k = (x d/dx)^a [(x - x^m)/(1 - x)]   at x = e^{b lambda},
// where x d/dx = (1/b) d/dlambda on this carrier, so the operator is
// derive_lambda applied a times. The base case splits into the m-free part
// G(b) and the rate-b part -x^m/(1-x).
inline ExpPoly summation_to_boundary(const ExpPoly& p, Exp window) {
    ExpPoly out;
    for (const auto& [key, c] : p.terms()) {
        const auto& [b, a] = key;
        if (b == 0) {
            const Polynomial ps = power_sum_polynomial(static_cast<unsigned>(a));
            for (std::size_t d = 0; d < ps.coefs().size(); ++d)
                if (ps.coefs()[d] != 0)
                    out.add(Rational(0), static_cast<int>(d), c.scale(ps.coefs()[d]));
        } else {
            ExpPoly base;
            base.add(Rational(0), 0, detail::geometric_sum(b, window));
            base.add(b, 0, detail::geometric_factor(b, window).scale(Rational(-1)));
            const Rational inv_b = Rational(1) / b;
            for (int i = 0; i < a; ++i) base = base.derive_lambda().scale(inv_b);
            out += base.scale(c);
        }
    }
    return out;
}

/// sum_{m >= 1} p(m) as a Laurent series; every monomial must carry a
/// positive rate, via sum_{m>=1} m^a e^{b lambda m} = ((1/b) d/dlambda)^a G(b).
inline TruncatedLaurent infinite_sum(const ExpPoly& p, Exp window) {
    TruncatedLaurent total = TruncatedLaurent::zero();
    for (const auto& [key, c] : p.terms()) {
        const auto& [b, a] = key;
        if (b == 0)
            fail(errc::divergent_sum, "undamped (rate-0) term of m-degree " + std::to_string(a) +
                                          " in an infinite sum");
        TruncatedLaurent g = detail::geometric_sum(b, window);
        const Rational inv_b = Rational(1) / b;
        for (int i = 0; i < a; ++i) g = g.derive().scale(inv_b);
        total = total + c * g;
    }
    return total;
}

struct RegularisedSeries {
    TruncatedLaurent series;
    std::vector<Rational> final_rates; // rates of the outermost ExpPoly
};

/// Total pole budget sum(|k_i| + 1): bounds the pole order of the word's
/// regularised series and of every counterterm product over its subwords.
inline Exp pole_budget(const Word& w) {
    Exp p = 0;
    for (Letter k : w.letters()) p += static_cast<Exp>(std::abs(k)) + 1;
    return p;
}

namespace detail {

inline RegularisedSeries regularised_mzv_uncached(const Word& w, const SchemeKernel& s,
                                                  Exp requested_trunc, Exp window) {
    if (s.kind == SchemeKernel::Kind::GZ && s.gz_zero_rate == 0 && w.front() == 0)
        fail(errc::divergent_sum,
             "[" + w.str() + "]: a leading z_0 leaves the outermost GZ sum undamped");
    ExpPoly q;
    for (std::size_t i = w.length(); i-- > 0;) {
        const ExpPoly ker = kernel_of_letter(s, w.letter(i), window);
        q = (i + 1 == w.length()) ? ker : ker * summation_to_boundary(q, window);
    }
    RegularisedSeries out{infinite_sum(q, window), q.rates()};
    if (out.series.trunc_order() < requested_trunc)
        fail(errc::insufficient_truncation,
             "[" + w.str() + "]: computed window " + std::to_string(out.series.trunc_order()) +
                 " is below the requested " + std::to_string(requested_trunc));
    if (s.flip_lambda) out.series = out.series.scale_variable(Rational(-1));
    out.series = out.series.truncated(requested_trunc);
    return out;
}

} // namespace detail

/// Laurent expansion at lambda = 0 of the regularised nested sum for w,
/// with coefficients known through lambda^window (default: total pole
/// bound + 1).
inline RegularisedSeries regularised_mzv_detailed(const Word& w, const SchemeKernel& s,
                                                  std::optional<Exp> window = std::nullopt) {
    if (w.is_empty()) return {TruncatedLaurent::one(), {}};
    Exp pole_bound = 0, slack = 8;
    for (Letter k : w.letters()) {
        pole_bound += static_cast<Exp>(std::abs(k)) + 1;
        slack += static_cast<Exp>(std::abs(k)) + 2;
    }
    const Exp requested = (window.has_value() ? *window : pole_bound + 1) + 1;
    const Exp internal = requested + slack;

    using Key = std::tuple<std::string, Word, Exp>;
    static std::map<Key, RegularisedSeries> cache;
    static std::mutex mu;
    Key key{s.cache_key(), w, requested};
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    RegularisedSeries r = detail::regularised_mzv_uncached(w, s, requested, internal);
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(std::move(key), std::move(r)).first->second;
}

inline TruncatedLaurent regularised_mzv(const Word& w, const SchemeKernel& s,
                                        std::optional<Exp> window = std::nullopt) {
    return regularised_mzv_detailed(w, s, window).series;
}

} // namespace mzvrg
