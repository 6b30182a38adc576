#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mzvrg/exact_arith.hpp"

using namespace mzvrg;

TEST_CASE("bernoulli values in the B1 = +1/2 convention") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(5) == Rational(0));
    CHECK(bernoulli(12) == Rational(-691, 2730));
    for (unsigned n = 3; n <= 19; n += 2) CHECK(bernoulli(n) == Rational(0));
}

TEST_CASE("bernoulli generating function: B(t)(e^t - 1) = t e^t through t^12") {
    // coefficient of t^m on both sides, m = 0..12
    const unsigned M = 12;
    for (unsigned m = 0; m <= M; ++m) {
        Rational lhs;
        for (unsigned k = 0; k < m; ++k)
            lhs += bernoulli(k) / Rational(factorial(k) * factorial(m - k));
        const Rational rhs = m == 0 ? Rational(0) : Rational(1, factorial(m - 1));
        CHECK(lhs == rhs);
    }
}

TEST_CASE("riemann zeta at non-positive integers") {
    CHECK(riemann_zeta_nonpositive(0) == Rational(-1, 2));
    CHECK(riemann_zeta_nonpositive(1) == Rational(-1, 12));
    CHECK(riemann_zeta_nonpositive(3) == Rational(1, 120));
    CHECK(riemann_zeta_nonpositive(2) == Rational(0));
}

TEST_CASE("power sum polynomials") {
    CHECK(power_sum_polynomial(0) == Polynomial({Rational(-1), Rational(1)}));
    CHECK(power_sum_polynomial(1) == Polynomial({Rational(0), Rational(-1, 2), Rational(1, 2)}));
    CHECK(power_sum_polynomial(2) ==
          Polynomial({Rational(0), Rational(1, 6), Rational(-1, 2), Rational(1, 3)}));

    for (unsigned a = 0; a <= 6; ++a) {
        const Polynomial p = power_sum_polynomial(a);
        CHECK(p.degree() == static_cast<int>(a) + 1);
        for (int m = 1; m <= 20; ++m) {
            Rational brute;
            for (int k = 1; k < m; ++k) brute += pow_rational(Rational(k), a);
            CHECK(p(Rational(m)) == brute);
        }
    }
}

TEST_CASE("row reduction basics") {
    RationalMatrix id(2, 2);
    id.at(0, 0) = 1;
    id.at(1, 1) = 1;
    auto r = row_reduce(id);
    CHECK(r.rank == 2);
    CHECK(r.pivots == std::vector<std::size_t>{0, 1});
    CHECK(r.rref == id);

    RationalMatrix prop(2, 2);
    prop.at(0, 0) = 1;
    prop.at(0, 1) = 1;
    prop.at(1, 0) = 2;
    prop.at(1, 1) = 2;
    auto r2 = row_reduce(prop);
    CHECK(r2.rank == 1);
    CHECK(r2.rref.at(0, 0) == 1);
    CHECK(r2.rref.at(0, 1) == 1);
    CHECK(r2.rref.at(1, 0) == 0);
    CHECK(r2.rref.at(1, 1) == 0);

    RationalMatrix z(1, 1);
    auto r3 = row_reduce(z);
    CHECK(r3.rank == 0);
}

TEST_CASE("row reduction is idempotent on random matrices") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3), dim(1, 5);
    for (int trial = 0; trial < 25; ++trial) {
        RationalMatrix m(dim(rng), dim(rng));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = Rational(num(rng), den(rng));
        const auto once = row_reduce(m);
        const auto twice = row_reduce(once.rref);
        CHECK(once.rref == twice.rref);
        CHECK(once.rank == twice.rank);
    }
}

TEST_CASE("rational wire format is strict") {
    CHECK(parse_rational("83/64512") == Rational(83, 64512));
    CHECK(parse_rational("-1/12") == Rational(-1, 12));
    CHECK(parse_rational("7") == Rational(7));
    CHECK(parse_rational("0") == Rational(0));
    CHECK_THROWS_AS(parse_rational("1/0"), error);
    CHECK_THROWS_AS(parse_rational("2/4"), error);
    CHECK_THROWS_AS(parse_rational("1/-3"), error);
    CHECK_THROWS_AS(parse_rational("01"), error);
    CHECK_THROWS_AS(parse_rational(""), error);
    CHECK_THROWS_AS(parse_rational("a/b"), error);
}
