#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mzvrg/laurent.hpp"

using namespace mzvrg;

namespace {

TruncatedLaurent random_series(std::mt19937& rng, int max_pole = 4) {
    std::uniform_int_distribution<int> num(-5, 5), den(1, 6), pole(0, max_pole), extra(6, 10);
    const int lo = -pole(rng);
    const int n = extra(rng) + (-lo) + 1;
    std::vector<Rational> c;
    for (int i = 0; i < n; ++i) c.push_back(Rational(num(rng), den(rng)));
    return TruncatedLaurent::window(lo, std::move(c), lo + n);
}

} // namespace

TEST_CASE("construction and canonical form") {
    const auto z = TruncatedLaurent::zero(5);
    CHECK(z.is_zero());
    CHECK(z.trunc_order() == 5);
    CHECK(z.valuation() == 5);

    const auto s = TruncatedLaurent::window(-2, {Rational(0), Rational(3), Rational(0)}, 4);
    CHECK(s.min_exp() == -1); // leading zero trimmed
    CHECK(s.coef(-1) == 3);
    CHECK(s.coef(2) == 0);
    CHECK_THROWS_AS(s.coef(4), error);
}

TEST_CASE("additive structure") {
    const auto x = TruncatedLaurent::window(-1, {Rational(2), Rational(1)}, 3);
    CHECK(x + TruncatedLaurent::zero() == x);
    const auto cancel = x + (-x);
    CHECK(cancel.is_zero());
    CHECK(cancel.trunc_order() == 3); // inherited truncation
    CHECK(x.scale(Rational(1)) == x);
}

TEST_CASE("multiplication") {
    const auto li = TruncatedLaurent::monomial(Rational(1), -1);
    const auto la = TruncatedLaurent::monomial(Rational(1), 1);
    CHECK(li * la == TruncatedLaurent::one());

    // (lambda^-2 - 1/12 + ...) * lambda^2 is a plain shift
    const auto a = TruncatedLaurent::window(-2, {Rational(1), Rational(0), Rational(-1, 12)}, 3);
    const auto shifted = a * TruncatedLaurent::monomial(Rational(1), 2);
    CHECK(shifted.coef(0) == 1);
    CHECK(shifted.coef(2) == Rational(-1, 12));
    CHECK(shifted.trunc_order() == 5);

    // (1 - e^lambda)(1 - e^lambda)^{-1} = 1 within the window
    const auto one_minus_exp = TruncatedLaurent::window(
        1, {Rational(-1), Rational(-1, 2), Rational(-1, 6)}, 4);
    const auto inv = one_minus_exp.invert();
    const auto prod = one_minus_exp * inv;
    CHECK(prod.coef(0) == 1);
    CHECK(prod.coef(1) == 0);
    CHECK(prod.coef(2) == 0);
    CHECK(prod.trunc_order() == 3);
    CHECK(inv.coef(-1) == -1);
    CHECK(inv.coef(0) == Rational(1, 2));
    CHECK(inv.coef(1) == Rational(-1, 12));
}

TEST_CASE("inversion") {
    CHECK(TruncatedLaurent::one().invert() == TruncatedLaurent::one());
    CHECK(TruncatedLaurent::monomial(Rational(2), 3).invert() ==
          TruncatedLaurent::monomial(Rational(1, 2), -3));

    // geometric series 1/(1 - lambda)
    const auto g = (TruncatedLaurent::one() - TruncatedLaurent::monomial(Rational(1), 1))
                       .truncated(8)
                       .invert();
    for (Exp e = 0; e < 8; ++e) CHECK(g.coef(e) == 1);

    CHECK_THROWS_AS(TruncatedLaurent::zero().invert(), error);
    // an exact two-term series has an infinite inverse; must truncate first
    CHECK_THROWS_AS(
        (TruncatedLaurent::one() - TruncatedLaurent::monomial(Rational(1), 1)).invert(), error);

    std::mt19937 rng(3);
    for (int i = 0; i < 30; ++i) {
        auto a = random_series(rng);
        if (a.is_zero()) continue;
        CHECK(agree_within_truncation(a.invert().invert(), a));
        CHECK(agree_within_truncation(a * a.invert(), TruncatedLaurent::one()));
    }
}

TEST_CASE("derivative and variable scaling") {
    CHECK(TruncatedLaurent::monomial(Rational(1), 2).derive() ==
          TruncatedLaurent::monomial(Rational(2), 1));
    CHECK(TruncatedLaurent::monomial(Rational(1), -1).scale_variable(Rational(2)) ==
          TruncatedLaurent::monomial(Rational(1, 2), -1));

    // d/dlambda of -1/lambda - 1/2 - lambda/12 = 1/lambda^2 - 1/12
    const auto g = TruncatedLaurent::window(-1, {Rational(-1), Rational(-1, 2), Rational(-1, 12)}, 2);
    const auto d = g.derive();
    CHECK(d.coef(-2) == 1);
    CHECK(d.coef(0) == Rational(-1, 12));
    CHECK(d.trunc_order() == 1);

    CHECK_THROWS_AS(g.scale_variable(Rational(0)), error);
}

TEST_CASE("minimal subtraction") {
    const auto a = TruncatedLaurent::window(-2, {Rational(1), Rational(0), Rational(-1, 12),
                                                 Rational(0), Rational(1, 240)},
                                            3);
    const auto [pole, finite] = a.minimal_subtraction();
    CHECK(pole == TruncatedLaurent::monomial(Rational(1), -2));
    CHECK(finite.coef(0) == Rational(-1, 12));
    CHECK(finite.coef(2) == Rational(1, 240));
    CHECK_FALSE(finite.has_pole());
    CHECK(pole + finite == a);

    const auto taylor = TruncatedLaurent::window(0, {Rational(7), Rational(1)}, 4);
    CHECK(taylor.minimal_subtraction().first.is_zero());
    const auto pure_pole = TruncatedLaurent::exact(-3, {Rational(5)});
    CHECK(pure_pole.minimal_subtraction().second.is_zero());
}

TEST_CASE("minimal subtraction is an idempotent Rota-Baxter projector") {
    std::mt19937 rng(9);
    for (int i = 0; i < 100; ++i) {
        const auto a = random_series(rng);
        const auto b = random_series(rng);
        const auto pi = [](const TruncatedLaurent& x) { return x.pole_part(); };
        CHECK(pi(pi(a)) == pi(a));
        CHECK(pi(a) + a.finite_part() == a);
        // pi(a)pi(b) = pi(pi(a) b) + pi(a pi(b)) - pi(ab)
        const auto lhs = pi(a) * pi(b);
        const auto rhs = pi(pi(a) * b) + pi(a * pi(b)) - pi(a * b);
        CHECK(agree_within_truncation(lhs, rhs));
    }
}

TEST_CASE("finite part at zero") {
    CHECK(TruncatedLaurent::constant(Rational(5)).finite_part_at_zero() == 5);
    const auto a = TruncatedLaurent::window(0, {Rational(-1, 12), Rational(0), Rational(1, 240)}, 4);
    CHECK(a.finite_part_at_zero() == Rational(-1, 12));
    const auto pole = TruncatedLaurent::window(-1, {Rational(1), Rational(1)}, 2);
    CHECK_THROWS_AS(pole.finite_part_at_zero(), error);
    CHECK_THROWS_AS(TruncatedLaurent::zero(0).finite_part_at_zero(), error);
}

TEST_CASE("ring axioms on random series") {
    std::mt19937 rng(27);
    for (int i = 0; i < 40; ++i) {
        const auto a = random_series(rng), b = random_series(rng), c = random_series(rng);
        CHECK(agree_within_truncation(a * b, b * a));
        CHECK(agree_within_truncation((a * b) * c, a * (b * c)));
        CHECK(agree_within_truncation(a * (b + c), a * b + a * c));
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
    }
}
