#include "doctest.h"

#include "padiclab/errors.hpp"
#include "padiclab/qseries.hpp"

using namespace padiclab;

TEST_CASE("window semantics: unknown above trunc, exact zero below min_exp") {
    QSeries s(-2, 5, {Rat(3), Rat(0), Rat(-1), Rat(7)}); // 3q^-2 - 1 + 7q
    CHECK(s.coeff(-2) == 3);
    CHECK(s.coeff(0) == -1);
    CHECK(s.coeff(1) == 7);
    CHECK(s.coeff(2) == 0);  // padded inside the window
    CHECK(s.coeff(-9) == 0); // below min_exp: exact zero
    CHECK_THROWS_AS((void)s.coeff(6), Error);
    CHECK(s.order() == -2);
    CHECK(s.integral());
    CHECK_FALSE(QSeries(0, 1, {Rat(1, 2)}).integral());

    QSeries poly = QSeries::monomial(Rat(1, 2), 3); // exact polynomial
    CHECK(poly.trunc() == TRUNC_INF);
    CHECK(poly.coeff(100) == 0); // tail of an exact polynomial is known

    CHECK_THROWS_AS(QSeries(0, 2, {Rat(1), Rat(1), Rat(1), Rat(1)}), Error);
}

TEST_CASE("truncated shrinks the window and drops stored tail") {
    QSeries s(1, 6, {Rat(1), Rat(2), Rat(3), Rat(4), Rat(5), Rat(6)});
    QSeries t = s.truncated(3);
    CHECK(t.trunc() == 3);
    CHECK(t.coeff(3) == 3);
    CHECK_THROWS_AS((void)t.coeff(4), Error);
    // widening is a no-op, never an invention of coefficients
    CHECK(s.truncated(10).trunc() == 6);
}

TEST_CASE("arithmetic respects the weakest truncation") {
    QSeries a(0, 5, {Rat(1), Rat(1)});
    QSeries b(0, 3, {Rat(0), Rat(2)});
    QSeries sum = a + b;
    CHECK(sum.trunc() == 3);
    CHECK(sum.coeff(1) == 3);
    QSeries prod = series_mul(QSeries::monomial(Rat(2), -1, 4), a);
    CHECK(prod.coeff(-1) == 2);
    CHECK(prod.coeff(0) == 2);
}

TEST_CASE("series_inverse: geometric series and pole order") {
    // 1/(1 - q) = 1 + q + q^2 + ...
    QSeries one_minus_q(0, 12, {Rat(1), Rat(-1)});
    QSeries geo = series_inverse(one_minus_q);
    for (long n = 0; n <= geo.trunc(); ++n) CHECK(geo.coeff(n) == 1);

    // 1/(q^2 (1 - q)) picks up a double pole; truncation contract T - 2 ord
    QSeries f = series_mul(QSeries::monomial(Rat(1), 2, 12), one_minus_q);
    QSeries inv = series_inverse(f);
    CHECK(inv.min_exp() == -2);
    CHECK(inv.coeff(-2) == 1);
    CHECK(inv.coeff(0) == 1);
    CHECK(series_mul(inv, f).coeff(0) == 1);

    CHECK_THROWS_AS(series_inverse(QSeries::zero(5)), NonUnitLeadingTerm);
}

TEST_CASE("series_pow handles negative exponents through the inverse") {
    QSeries s(0, 8, {Rat(1), Rat(3)}); // 1 + 3q
    QSeries cube = series_pow(s, 3);
    CHECK(cube.coeff(0) == 1);
    CHECK(cube.coeff(1) == 9);
    CHECK(cube.coeff(2) == 27);
    CHECK(cube.coeff(3) == 27);
    QSeries recip = series_pow(s, -2);
    CHECK(series_mul(recip, series_pow(s, 2)).coeff(0) == 1);
    CHECK(series_mul(recip, series_pow(s, 2)).coeff(1) == 0);
}

TEST_CASE("U and V operators: index bookkeeping") {
    // s = q^-1 + 2q + 5q^3 + 9q^6
    QSeries s(-1, 6, {Rat(1), Rat(0), Rat(2), Rat(0), Rat(5), Rat(0), Rat(0), Rat(9)});
    QSeries u3 = u_operator(s, 3);
    CHECK(u3.coeff(1) == 5);  // picks q^3
    CHECK(u3.coeff(2) == 9);  // picks q^6
    CHECK(u3.coeff(0) == 0);  // q^-1 is not reachable: -1 not divisible by 3
    CHECK(u3.trunc() == 2);

    QSeries v2 = v_operator(s, 2);
    CHECK(v2.min_exp() == -2);
    CHECK(v2.coeff(-2) == 1);
    CHECK(v2.coeff(2) == 2);
    CHECK(v2.coeff(3) == 0);
    CHECK(v2.trunc() == 12);

    CHECK(agree_through(u_operator(v_operator(s, 5), 5), s, 6));
}

TEST_CASE("derivative and integral are mutually inverse away from constants") {
    QSeries s(-3, 9, {Rat(5), Rat(0), Rat(-2, 7), Rat(0), Rat(1), Rat(4)});
    CHECK_THROWS_AS(formal_integral(QSeries::one(4)), NonzeroConstantTerm);
    QSeries I = formal_integral(s); // constant slot of s is zero: integrable
    CHECK(I.coeff(-3) == Rat(-5, 3));
    CHECK(agree_through(d_operator(I), s, 9));
    CHECK(agree_through(formal_integral(d_operator(s)), s, 9));
}

TEST_CASE("reversion: q/(1-q) reverts to q/(1+q)") {
    std::vector<Rat> c;
    for (int i = 0; i < 10; ++i) c.push_back(Rat(1)); // q + q^2 + ... = q/(1-q)
    QSeries s(1, 10, c);
    QSeries r = series_reversion(s);
    for (long n = 1; n <= r.trunc(); ++n)
        CHECK(r.coeff(n) == ((n % 2) ? Rat(1) : Rat(-1))); // q - q^2 + q^3 - ...
    CHECK(agree_through(compose_inner(r, s), QSeries::monomial(Rat(1), 1, r.trunc()),
                        r.trunc()));
    CHECK_THROWS_AS(series_reversion(QSeries(2, 8, {Rat(1)})), NonUnitLeadingTerm);
}

TEST_CASE("compose_inner evaluates pole parts through the inverse") {
    // outer = q^-2 + 3 + q, inner = q + q^2
    QSeries outer(-2, 4, {Rat(1), Rat(0), Rat(3), Rat(1)});
    QSeries inner(1, 16, {Rat(1), Rat(1)});
    QSeries got = compose_inner(outer, inner);
    // 1/(q+q^2)^2 = q^-2 (1+q)^{-2} = q^-2 - 2q^-1 + 3 - 4q + ...
    CHECK(got.coeff(-2) == 1);
    CHECK(got.coeff(-1) == -2);
    CHECK(got.coeff(0) == 6);  // 3 (pole part) + 3 (constant)
    CHECK(got.coeff(1) == -3); // -4 + 1 (from inner^1)
    CHECK_THROWS_AS(compose_inner(outer, QSeries::one(5)), NonUnitLeadingTerm);
}

TEST_CASE("min_ord_p locates the deepest denominator") {
    QSeries s(0, 6, {Rat(1), Rat(1, 9), Rat(5, 3), Rat(27)});
    auto [ord, at] = min_ord_p(s, Int(3));
    CHECK(ord == -2);
    CHECK(at == 1);
}

TEST_CASE("text format round-trips exactly and rejects corruption") {
    QSeries s(-2, 40, {Rat(-7, 3), Rat(0), Rat(1), Rat(22, 7)});
    QSeries back = parse_qseries(serialize(s));
    CHECK(back.min_exp() == s.min_exp());
    CHECK(back.trunc() == s.trunc());
    CHECK(agree_through(back, s, 40));
    CHECK_THROWS_AS(parse_qseries("not a header"), ParseError);
    CHECK_THROWS_AS(parse_qseries("0 4\n2 1/0"), ParseError);
}
