#pragma once

#include <mutex>
#include <utility>
#include <vector>

#include "mzvrg/errors.hpp"
#include "mzvrg/rational.hpp"

namespace mzvrg {

// Bernoulli numbers in the convention of the generating function
// t e^t/(e^t - 1), so B_1 = +1/2.  Most tables print the e^t -> 1 variant
// with B_1 = -1/2; only the sign of B_1 differs between the two.
//
// Computed by exact series division: comparing the t^m coefficients of
// t e^t = (sum_k B_k t^k/k!) (e^t - 1) gives, for m >= 1,
//   1/(m-1)! = sum_{k=0}^{m-1} B_k / (k! (m-k)!).
inline Rational bernoulli(unsigned n) {
    static std::vector<Rational> cache{Rational(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (cache.size() <= n) {
        const unsigned m = static_cast<unsigned>(cache.size()) + 1;
        Rational acc;
        for (unsigned k = 0; k + 1 < m; ++k)
            acc += cache[k] / Rational(factorial(k) * factorial(m - k));
        cache.push_back((Rational(1, factorial(m - 1)) - acc) * Rational(factorial(m - 1)));
    }
    return cache[n];
}

/// zeta(-l) = -B_{l+1}/(l+1) for l >= 0.
inline Rational riemann_zeta_nonpositive(unsigned l) {
    return -bernoulli(l + 1) / Rational(l + 1);
}

// Dense univariate polynomial over Q in the formal variable m.
// Trailing zero coefficients are trimmed; the zero polynomial is empty.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coefs) : coefs_(std::move(coefs)) { trim(); }

    static Polynomial constant(Rational c) { return Polynomial({std::move(c)}); }

    bool is_zero() const { return coefs_.empty(); }
    // degree of the zero polynomial is "none"; callers must check is_zero()
    int degree() const { return static_cast<int>(coefs_.size()) - 1; }
    const std::vector<Rational>& coefs() const { return coefs_; }

    Rational coef(std::size_t i) const { return i < coefs_.size() ? coefs_[i] : Rational(0); }

    Rational operator()(const Rational& m) const {
        Rational acc;
        for (auto it = coefs_.rbegin(); it != coefs_.rend(); ++it) acc = acc * m + *it;
        return acc;
    }

    Polynomial& operator+=(const Polynomial& o) {
        if (coefs_.size() < o.coefs_.size()) coefs_.resize(o.coefs_.size());
        for (std::size_t i = 0; i < o.coefs_.size(); ++i) coefs_[i] += o.coefs_[i];
        trim();
        return *this;
    }

    Polynomial operator*(const Rational& s) const {
        if (s == 0) return {};
        auto c = coefs_;
        for (auto& x : c) x *= s;
        return Polynomial(std::move(c));
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim() {
        while (!coefs_.empty() && coefs_.back() == 0) coefs_.pop_back();
    }

    std::vector<Rational> coefs_;
};

/// Faulhaber closed form: the unique polynomial P of degree a+1 with
/// P(m) = sum_{k=1}^{m-1} k^a for every integer m >= 1.
inline Polynomial power_sum_polynomial(unsigned a) {
    // sum_{k=1}^{n} k^a = 1/(a+1) sum_{j=0}^{a} C(a+1, j) B_j n^{a+1-j}
    // (valid with B_1 = +1/2), then substitute n = m - 1.
    std::vector<Rational> in_n(a + 2);
    for (unsigned j = 0; j <= a; ++j)
        in_n[a + 1 - j] += Rational(binomial(a + 1, j)) * bernoulli(j) / Rational(a + 1);
    std::vector<Rational> in_m(a + 2);
    for (unsigned i = 0; i < in_n.size(); ++i) {
        if (in_n[i] == 0) continue;
        for (unsigned t = 0; t <= i; ++t) {
            Rational term = in_n[i] * Rational(binomial(i, t));
            if ((i - t) % 2 == 1) term = -term;
            in_m[t] += term;
        }
    }
    return Polynomial(std::move(in_m));
}

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void append_row(const std::vector<Rational>& row) {
        if (rows_ == 0 && cols_ == 0) cols_ = row.size();
        if (row.size() != cols_) fail(errc::domain_error, "ragged row in RationalMatrix");
        data_.insert(data_.end(), row.begin(), row.end());
        ++rows_;
    }

    friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> data_;
};

struct RowReduction {
    RationalMatrix rref;
    std::vector<std::size_t> pivots; // column index per pivot row
    std::size_t rank = 0;
};

// Exact Gauss-Jordan with deterministic pivoting: scan columns left to
// right, pick the lowest-index row with a nonzero entry.
inline RowReduction row_reduce(RationalMatrix m) {
    RowReduction out;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
        if (sel == m.rows()) continue;
        if (sel != pivot_row)
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(sel, c), m.at(pivot_row, c));
        const Rational inv = Rational(1) / m.at(pivot_row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m.at(pivot_row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == pivot_row || m.at(r, col) == 0) continue;
            const Rational f = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(pivot_row, c);
        }
        out.pivots.push_back(col);
        ++pivot_row;
    }
    out.rank = out.pivots.size();
    out.rref = std::move(m);
    return out;
}

/// Rank of the row span of a list of coordinate vectors.
inline std::size_t rank_of_rows(const std::vector<std::vector<Rational>>& rows) {
    RationalMatrix m;
    for (const auto& r : rows) m.append_row(r);
    return m.rows() == 0 ? 0 : row_reduce(std::move(m)).rank;
}

} // namespace mzvrg
