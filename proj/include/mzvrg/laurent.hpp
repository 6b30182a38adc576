#pragma once

#include <limits>
#include <utility>
#include <vector>

#include "mzvrg/errors.hpp"
#include "mzvrg/rational.hpp"

namespace mzvrg {

using Exp = int;

// Sentinel truncation order for series that are exactly known (finitely
// supported): constants, monomials, polynomial expressions.
inline constexpr Exp unbounded_order = std::numeric_limits<Exp>::max() / 4;

inline Exp sat_add(Exp a, Exp b) {
    if (a >= unbounded_order / 2 || b >= unbounded_order / 2) return unbounded_order;
    return a + b;
}

// Truncated Laurent series over Q in the regularisation parameter lambda:
// coefficients are exactly known for exponents in [min_exp, trunc_order) and
// unknown from trunc_order on. Every operation propagates trunc_order
// conservatively; reading past it is a hard error, never a silent zero.
class TruncatedLaurent {
public:
    TruncatedLaurent() = default;

    /// Exactly known finite sum of monomials, coefs[i] * lambda^{min_exp+i}.
    static TruncatedLaurent exact(Exp min_exp, std::vector<Rational> coefs) {
        return TruncatedLaurent(min_exp, std::move(coefs), unbounded_order);
    }

    static TruncatedLaurent window(Exp min_exp, std::vector<Rational> coefs, Exp trunc) {
        return TruncatedLaurent(min_exp, std::move(coefs), trunc);
    }

    static TruncatedLaurent constant(Rational c) { return exact(0, {std::move(c)}); }
    static TruncatedLaurent one() { return constant(Rational(1)); }
    static TruncatedLaurent monomial(Rational c, Exp e) { return exact(e, {std::move(c)}); }

    /// Zero known up to (excluding) trunc.
    static TruncatedLaurent zero(Exp trunc = unbounded_order) {
        return TruncatedLaurent(0, {}, trunc);
    }

    bool is_zero() const { return coefs_.empty(); }
    bool is_exact() const { return trunc_ >= unbounded_order; }
    Exp trunc_order() const { return trunc_; }

    /// First exponent with a nonzero coefficient; for the zero series the
    /// valuation is the truncation order (nothing nonzero is visible).
    Exp valuation() const { return coefs_.empty() ? trunc_ : min_exp_; }
    Exp min_exp() const { return valuation(); }

    bool has_pole() const { return !coefs_.empty() && min_exp_ < 0; }
    Exp pole_order() const { return has_pole() ? -min_exp_ : 0; }

    Rational coef(Exp e) const {
        if (e >= trunc_)
            fail(errc::insufficient_truncation,
                 "coefficient of lambda^" + std::to_string(e) + " requested, series known below " +
                     std::to_string(trunc_));
        if (coefs_.empty() || e < min_exp_ || e >= min_exp_ + static_cast<Exp>(coefs_.size()))
            return Rational(0);
        return coefs_[static_cast<std::size_t>(e - min_exp_)];
    }

    friend bool operator==(const TruncatedLaurent&, const TruncatedLaurent&) = default;

    /// Equality of all coefficients on the common known window.
    friend bool agree_within_truncation(const TruncatedLaurent& a, const TruncatedLaurent& b) {
        const Exp t = std::min(a.trunc_, b.trunc_);
        const Exp lo = std::min(a.valuation(), b.valuation());
        const Exp a_end = a.is_zero() ? lo : a.min_exp_ + static_cast<Exp>(a.coefs_.size());
        const Exp b_end = b.is_zero() ? lo : b.min_exp_ + static_cast<Exp>(b.coefs_.size());
        const Exp hi = std::min(t, std::max(a_end, b_end));
        for (Exp e = lo; e < hi; ++e)
            if (a.coef(e) != b.coef(e)) return false;
        return true;
    }

    friend TruncatedLaurent operator+(const TruncatedLaurent& a, const TruncatedLaurent& b) {
        const Exp t = std::min(a.trunc_, b.trunc_);
        if (a.is_zero() && b.is_zero()) return zero(t);
        const Exp lo = std::min(a.is_zero() ? b.min_exp_ : a.min_exp_,
                                b.is_zero() ? a.min_exp_ : b.min_exp_);
        const Exp a_end = a.is_zero() ? lo : a.min_exp_ + static_cast<Exp>(a.coefs_.size());
        const Exp b_end = b.is_zero() ? lo : b.min_exp_ + static_cast<Exp>(b.coefs_.size());
        const Exp hi = std::min(t, std::max(a_end, b_end));
        std::vector<Rational> c;
        for (Exp e = lo; e < hi; ++e) {
            Rational v;
            if (!a.is_zero() && e >= a.min_exp_ && e < a_end)
                v += a.coefs_[static_cast<std::size_t>(e - a.min_exp_)];
            if (!b.is_zero() && e >= b.min_exp_ && e < b_end)
                v += b.coefs_[static_cast<std::size_t>(e - b.min_exp_)];
            c.push_back(std::move(v));
        }
        return TruncatedLaurent(lo, std::move(c), t);
    }

    friend TruncatedLaurent operator-(const TruncatedLaurent& a, const TruncatedLaurent& b) {
        return a + (-b);
    }

    TruncatedLaurent operator-() const {
        auto c = coefs_;
        for (auto& x : c) x = -x;
        return TruncatedLaurent(min_exp_, std::move(c), trunc_);
    }

    TruncatedLaurent scale(const Rational& s) const {
        if (s == 0) return zero(trunc_);
        auto c = coefs_;
        for (auto& x : c) x *= s;
        return TruncatedLaurent(min_exp_, std::move(c), trunc_);
    }

    friend TruncatedLaurent operator*(const TruncatedLaurent& a, const TruncatedLaurent& b) {
        const Exp t = std::min(sat_add(a.trunc_, b.valuation()), sat_add(b.trunc_, a.valuation()));
        if (a.is_zero() || b.is_zero()) return zero(t);
        const Exp lo = a.min_exp_ + b.min_exp_;
        std::vector<Rational> c(t >= unbounded_order
                                    ? a.coefs_.size() + b.coefs_.size() - 1
                                    : static_cast<std::size_t>(std::max(0, t - lo)));
        for (std::size_t i = 0; i < a.coefs_.size(); ++i) {
            if (a.coefs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coefs_.size(); ++j) {
                if (i + j >= c.size()) break;
                c[i + j] += a.coefs_[i] * b.coefs_[j];
            }
        }
        return TruncatedLaurent(lo, std::move(c), t);
    }

    /// Multiplicative inverse up to the propagated truncation. An exactly
    /// known series with more than one term has an infinite inverse series;
    /// truncate() to a window first.
    TruncatedLaurent invert() const {
        if (is_zero()) fail(errc::not_invertible, "inverse of the zero series");
        if (is_exact() && coefs_.size() == 1)
            return monomial(Rational(1) / coefs_[0], -min_exp_);
        if (is_exact())
            fail(errc::not_invertible,
                 "inverse of a multi-term exact series is an infinite series; truncate first");
        // a = c lambda^v (1 + u): power-series part known to N = trunc - v
        // coefficients, reciprocal known to the same N, total window shifts
        // to [-v, trunc - 2v).
        const Exp v = min_exp_;
        const std::size_t n = static_cast<std::size_t>(trunc_ - v);
        std::vector<Rational> a(n);
        for (std::size_t i = 0; i < n && i < coefs_.size(); ++i) a[i] = coefs_[i];
        std::vector<Rational> r(n);
        r[0] = Rational(1) / a[0];
        for (std::size_t k = 1; k < n; ++k) {
            Rational acc;
            for (std::size_t j = 1; j <= k; ++j) acc += a[j] * r[k - j];
            r[k] = -acc * r[0];
        }
        return TruncatedLaurent(-v, std::move(r), trunc_ - 2 * v);
    }

    /// Termwise d/dlambda; the truncation order drops by one.
    TruncatedLaurent derive() const {
        const Exp t = is_exact() ? unbounded_order : trunc_ - 1;
        if (is_zero()) return zero(t);
        std::vector<Rational> c;
        for (std::size_t i = 0; i < coefs_.size(); ++i) {
            const Exp e = min_exp_ + static_cast<Exp>(i);
            c.push_back(coefs_[i] * Rational(e));
        }
        return TruncatedLaurent(min_exp_ - 1, std::move(c), t);
    }

    /// lambda -> c*lambda: multiplies the lambda^n coefficient by c^n.
    TruncatedLaurent scale_variable(const Rational& c) const {
        if (c == 0) fail(errc::domain_error, "scale_variable by zero");
        auto co = coefs_;
        for (std::size_t i = 0; i < co.size(); ++i)
            co[i] *= pow_rational(c, min_exp_ + static_cast<Exp>(i));
        return TruncatedLaurent(min_exp_, std::move(co), trunc_);
    }

    TruncatedLaurent truncated(Exp t) const {
        if (t >= trunc_) return *this;
        if (is_zero() || t <= min_exp_) return zero(t);
        std::vector<Rational> c(coefs_.begin(),
                                coefs_.begin() + std::min<std::size_t>(coefs_.size(),
                                                                       static_cast<std::size_t>(t - min_exp_)));
        return TruncatedLaurent(min_exp_, std::move(c), t);
    }

    /// Minimal subtraction: pole = strictly negative exponents (exactly
    /// known once the window reaches 0), finite = the rest.
    std::pair<TruncatedLaurent, TruncatedLaurent> minimal_subtraction() const {
        if (trunc_ < 0)
            fail(errc::insufficient_truncation,
                 "cannot split a series whose window ends inside the pole part");
        if (!has_pole()) return {zero(), *this};
        std::vector<Rational> pole(coefs_.begin(),
                                   coefs_.begin() + std::min<std::size_t>(coefs_.size(),
                                                                          static_cast<std::size_t>(-min_exp_)));
        std::vector<Rational> fin;
        if (static_cast<std::size_t>(-min_exp_) < coefs_.size())
            fin.assign(coefs_.begin() + static_cast<std::size_t>(-min_exp_), coefs_.end());
        return {TruncatedLaurent(min_exp_, std::move(pole), unbounded_order),
                TruncatedLaurent(0, std::move(fin), trunc_)};
    }

    TruncatedLaurent pole_part() const { return minimal_subtraction().first; }
    TruncatedLaurent finite_part() const { return minimal_subtraction().second; }

    /// Coefficient of lambda^0, defined only for pole-free series.
    Rational finite_part_at_zero() const {
        if (has_pole())
            fail(errc::pole_present, "series has a pole of order " + std::to_string(pole_order()));
        if (trunc_ < 1)
            fail(errc::insufficient_truncation, "constant term is outside the known window");
        return coef(0);
    }

    double evaluate(double lambda) const {
        double acc = 0;
        for (std::size_t i = 0; i < coefs_.size(); ++i) {
            double p = 1;
            const Exp e = min_exp_ + static_cast<Exp>(i);
            for (Exp k = 0; k < (e < 0 ? -e : e); ++k) p *= lambda;
            acc += to_double(coefs_[i]) * (e < 0 ? 1.0 / p : p);
        }
        return acc;
    }

    /// Positional coefficients covering [min_exp, trunc) for serialisation.
    std::vector<Rational> window_coefs() const {
        std::vector<Rational> out;
        if (is_zero()) return out;
        const Exp hi = is_exact() ? min_exp_ + static_cast<Exp>(coefs_.size()) : trunc_;
        for (Exp e = min_exp_; e < hi; ++e) out.push_back(coef(e));
        return out;
    }

private:
    TruncatedLaurent(Exp min_exp, std::vector<Rational> coefs, Exp trunc)
        : min_exp_(min_exp), coefs_(std::move(coefs)), trunc_(trunc) {
        canonicalise();
    }

    void canonicalise() {
        if (!coefs_.empty() && min_exp_ + static_cast<Exp>(coefs_.size()) > trunc_) {
            if (trunc_ <= min_exp_)
                coefs_.clear();
            else
                coefs_.resize(static_cast<std::size_t>(trunc_ - min_exp_));
        }
        std::size_t lead = 0;
        while (lead < coefs_.size() && coefs_[lead] == 0) ++lead;
        if (lead) {
            coefs_.erase(coefs_.begin(), coefs_.begin() + static_cast<long>(lead));
            min_exp_ += static_cast<Exp>(lead);
        }
        while (!coefs_.empty() && coefs_.back() == 0) coefs_.pop_back();
        if (coefs_.empty()) min_exp_ = 0;
    }

    Exp min_exp_ = 0;
    std::vector<Rational> coefs_; // first and last entries nonzero
    Exp trunc_ = unbounded_order;
};

} // namespace mzvrg
