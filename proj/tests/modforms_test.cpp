#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <string>

#include "padiclab/errors.hpp"
#include "padiclab/modforms.hpp"

using namespace padiclab;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
    std::string path = "modforms_test_" + name + ".txt";
    std::ofstream out(path);
    out << content;
    out.close();
    return path;
}

} // namespace

TEST_CASE("eta(t)^24 reproduces the discriminant coefficients") {
    EtaQuotientSpec delta{{{1, 24}}};
    QSeries d = eta_quotient_expand(delta, 6);
    CHECK(d.coeff(1) == 1);
    CHECK(d.coeff(2) == -24);
    CHECK(d.coeff(3) == 252);
    CHECK(d.coeff(4) == -1472);
    CHECK(d.coeff(5) == 4830);
    CHECK(d.integral());
}

TEST_CASE("eta quotient leading exponent must be integral") {
    CHECK(EtaQuotientSpec{{{1, 24}}}.leading_numerator() == 24);
    CHECK_THROWS_AS(eta_quotient_expand(EtaQuotientSpec{{{1, 1}}}, 5),
                    FractionalLeadingExponent);
    CHECK_THROWS_AS(eta_quotient_expand(EtaQuotientSpec{{{4, 2}, {16, 6}}}, 5),
                    FractionalLeadingExponent); // (8 + 96)/24 not integral
}

TEST_CASE("eta_quotient_mul agrees with expand-then-multiply") {
    EtaQuotientSpec base_spec{{{8, 3}}};      // leading exponent 1
    EtaQuotientSpec extra{{{4, 2}, {8, -1}}}; // leading exponent 0
    QSeries base = eta_quotient_expand(base_spec, 60);
    QSeries joint = eta_quotient_mul(base, extra, 60);
    EtaQuotientSpec full{{{4, 2}, {8, 2}}};
    CHECK(agree_through(joint, eta_quotient_expand(full, 60), 60));
}

TEST_CASE("bernoulli numbers and the Kummer congruence for B_{p+1}") {
    CHECK(bernoulli(0) == 1);
    CHECK(bernoulli(1) == Rat(-1, 2));
    CHECK(bernoulli(2) == Rat(1, 6));
    CHECK(bernoulli(4) == Rat(-1, 30));
    CHECK(bernoulli(7) == 0);
    CHECK(bernoulli(12) == Rat(-691, 2730));
    // p+1 = 2 mod (p-1), so B_{p+1}/(p+1) = B_2/2 mod p for p >= 5
    for (long p : {5L, 7L, 11L, 13L}) {
        Rat lhs = bernoulli(p + 1) / Rat(p + 1);
        Rat rhs = bernoulli(2) / Rat(2);
        CHECK(reduce_mod(lhs, Int(p), 1) == reduce_mod(rhs, Int(p), 1));
    }
}

TEST_CASE("Eisenstein q-expansions") {
    QSeries e4 = eisenstein_qexp(4, 3);
    CHECK(e4.coeff(0) == 1);
    CHECK(e4.coeff(1) == 240);
    CHECK(e4.coeff(2) == 2160);
    CHECK(e4.coeff(3) == 6720);
    QSeries e6 = eisenstein_qexp(6, 3);
    CHECK(e6.coeff(1) == -504);
    CHECK(e6.coeff(2) == -16632);
    CHECK(e6.coeff(3) == -122976);
    QSeries e8 = eisenstein_qexp(8, 2);
    CHECK(e8.coeff(1) == 480);
    CHECK(e8.coeff(2) == 61920);
    CHECK_THROWS_AS(eisenstein_qexp(5, 3), Error);
    CHECK_THROWS_AS(eisenstein_qexp(2, 3), Error);
}

TEST_CASE("weight-2 quasimodular normalization") {
    QSeries P = p_series(4);
    CHECK(P.coeff(0) == Rat(1, 24));
    CHECK(P.coeff(1) == -1);
    CHECK(P.coeff(2) == -3);
    CHECK(P.coeff(3) == -4);
    CHECK(P.coeff(4) == -7);
}

TEST_CASE("level-32 eigenform: stored coefficients and Hecke extension") {
    Builtin32 b32 = builtin_32(120);
    const Eigenform& g = *b32.form;
    CHECK(g.level() == 32);
    CHECK(g.at(1) == 1);
    CHECK(g.at(5) == -2);
    CHECK(g.at(9) == -3);
    CHECK(g.at(13) == 6);
    CHECK(g.at(17) == 2);
    CHECK(g.at(25) == -1); // b(5)^2 - 5
    CHECK(g.at(49) == -7); // b(7) = 0
    CHECK(g.at(45) == 6);  // b(9) b(5)
    for (long n = 1; n <= 120; ++n)
        if (n % 4 != 1) CHECK(g.at(n) == 0);
    g.verify();

    // extension by multiplicativity past the stored range
    CHECK(g.b_at(125) == g.at(5) * g.at(25) - 5 * g.at(5)); // 4 + 10 = ... recursion
    CHECK(g.b_at(121 * 5) == g.b_at(121) * g.at(5));
    CHECK(g.b_at(121) == -11); // b(11) = 0, so b(11^2) = -11
    CHECK_THROWS_AS((void)Eigenform(32, {Int(1), Int(0)}).b_at(3), Error);
}

TEST_CASE("eigenform verification rejects corrupted tables") {
    Builtin32 b32 = builtin_32(60);
    std::vector<Int> good;
    for (long n = 1; n <= 60; ++n) good.push_back(b32.form->at(n));

    std::vector<Int> wrong_start = good;
    wrong_start[0] = 2;
    CHECK_THROWS_AS(Eigenform(32, wrong_start).verify(), MissingNormalization);

    std::vector<Int> broken_mult = good;
    broken_mult[44] = 7; // b(45) must equal b(9) b(5) = 6
    CHECK_THROWS_AS(Eigenform(32, broken_mult).verify(), HeckeInconsistency);

    std::vector<Int> broken_pp = good;
    broken_pp[24] = 1; // b(25) must equal b(5)^2 - 5 = -1
    CHECK_THROWS_AS(Eigenform(32, broken_pp).verify(), HeckeInconsistency);
}

TEST_CASE("eigenform_from_series adopts a q-expansion") {
    Builtin32 b32 = builtin_32(80);
    Eigenform e = eigenform_from_series(b32.g, 32);
    CHECK(e.stored_terms() == 80);
    CHECK(e.at(13) == 6);
    QSeries shifted = QSeries::monomial(Rat(2), 1, 10);
    CHECK_THROWS_AS(eigenform_from_series(shifted, 32), MissingNormalization);
}

TEST_CASE("eigenform files: level line, gaps, and normalization") {
    std::string good = write_temp("good", "level 32\n1 1\n2 0\n3 0\n4 0\n5 -2\n");
    Eigenform e = load_eigenform(good, 1);
    CHECK(e.level() == 32);
    CHECK(e.at(5) == -2);
    std::remove(good.c_str());

    std::string fallback = write_temp("fallback", "1 1\n2 0\n");
    CHECK(load_eigenform(fallback, 16).level() == 16);
    std::remove(fallback.c_str());

    std::string gap = write_temp("gap", "1 1\n3 5\n");
    CHECK_THROWS_AS(load_eigenform(gap, 1), ParseError);
    std::remove(gap.c_str());

    std::string unnormalized = write_temp("unnorm", "1 2\n2 0\n");
    CHECK_THROWS_AS(load_eigenform(unnormalized, 1), MissingNormalization);
    std::remove(unnormalized.c_str());

    CHECK_THROWS_AS(load_eigenform("no_such_file_here.txt", 1), ParseError);
}

TEST_CASE("level-32 cast: leading terms and algebraic relations") {
    Builtin32 b32 = builtin_32(200);
    CHECK(b32.curve.g2 == -16);
    CHECK(b32.curve.g3 == 0);
    CHECK(b32.curve.discriminant() == -4096);

    CHECK(b32.g.coeff(1) == 1);
    CHECK(b32.L.min_exp() == -1);
    CHECK(b32.L.coeff(-1) == 1);
    CHECK(b32.L2.coeff(-2) == 1);
    CHECK(agree_through(b32.L2, rescale(b32.L, 2).truncated(b32.L2.trunc()),
                        b32.L2.trunc()));

    // W1 = -g L(2tau): odd principal part, support on 3 mod 4
    CHECK(b32.W1.coeff(-1) == -1);
    CHECK(b32.W1.coeff(3) == 2);
    CHECK(b32.W1.coeff(7) == 1);
    CHECK(b32.W1.coeff(11) == -2);
    CHECK(b32.W1.coeff(27) == 12);
    for (long n = -1; n <= 100; ++n)
        if (((n % 4) + 4) % 4 != 3) CHECK(b32.W1.coeff(n) == 0);
    QSeries prod = -series_mul(b32.g, b32.L2);
    CHECK(agree_through(prod.truncated(150), b32.W1.truncated(150), 150));

    // W2 = E4(4tau)/g has integer coefficients
    CHECK(b32.W2.coeff(-1) == 1);
    CHECK(b32.W2.coeff(3) == 242);
    CHECK(b32.W2.coeff(7) == 2647);
    CHECK(b32.W2.coeff(11) == 12734);
    CHECK(b32.W2.integral());
    QSeries back = series_mul(b32.W2, b32.g);
    CHECK(agree_through(back.truncated(150), rescale(eisenstein_qexp(4, 50), 4), 150));
}

TEST_CASE("eichler integral divides coefficients by their exponent") {
    Builtin32 b32 = builtin_32(30);
    QSeries E = eichler_integral(*b32.form, 30);
    CHECK(E.coeff(1) == 1);
    CHECK(E.coeff(5) == Rat(-2, 5));
    CHECK(E.coeff(9) == Rat(-1, 3));
    CHECK(agree_through(d_operator(E), b32.g.truncated(30), 30));
}
