#include "doctest.h"

#include "padiclab/eisenmod.hpp"
#include "padiclab/errors.hpp"
#include "padiclab/modforms.hpp"
#include "padiclab/weierstrass.hpp"

using namespace padiclab;

namespace {

CurveModel curve32() { return curve_normalize(Rat(-16), Rat(0)); }
CurveModel curve_j0() { return curve_normalize(Rat(0), Rat(4)); }

} // namespace

TEST_CASE("Eisenstein series as isobaric polynomials in Q and R") {
    WeightedPoly e4 = ek_as_QR(4);
    REQUIRE(e4.terms.size() == 1);
    CHECK(e4.terms.at({1, 0}) == 1);
    CHECK(e4.str() == "(1)*Q^1");

    CHECK(ek_as_QR(6).terms.at({0, 1}) == 1);
    CHECK(ek_as_QR(8).terms.at({2, 0}) == 1);  // E8 = Q^2
    CHECK(ek_as_QR(10).terms.at({1, 1}) == 1); // E10 = QR

    WeightedPoly e12 = ek_as_QR(12);
    REQUIRE(e12.terms.size() == 2);
    CHECK(e12.terms.at({3, 0}) == Rat(441, 691));
    CHECK(e12.terms.at({0, 2}) == Rat(250, 691));

    WeightedPoly e14 = ek_as_QR(14);
    REQUIRE(e14.terms.size() == 1);
    CHECK(e14.terms.at({2, 1}) == 1);

    CHECK_THROWS_AS(ek_as_QR(3), Error);
    CHECK_THROWS_AS(ek_as_QR(2), Error);
}

TEST_CASE("q-expansion identities behind the low-weight relations") {
    QSeries E4 = eisenstein_qexp(4, 40);
    QSeries E6 = eisenstein_qexp(6, 40);
    CHECK(agree_through(eisenstein_qexp(8, 40), series_mul(E4, E4), 40));
    CHECK(agree_through(eisenstein_qexp(10, 40), series_mul(E4, E6), 40));
}

TEST_CASE("weighted evaluation agrees with the lattice recursion route") {
    CurveModel c32 = curve32();
    CHECK(evaluate_weighted(ek_as_QR(4), c32) == -192);
    CHECK(evaluate_weighted(ek_as_QR(8), c32) == 36864);
    CHECK(evaluate_weighted(ek_as_QR(12), c32) == Rat(Int("-3121348608"), Int(691)));

    CurveModel gen = curve_normalize(Rat(5), Rat(7));
    for (long k : {8L, 10L, 12L, 14L}) {
        CHECK(evaluate_weighted(ek_as_QR(k), c32) == lattice_eisenstein(c32, k).E);
        CHECK(evaluate_weighted(ek_as_QR(k), gen) == lattice_eisenstein(gen, k).E);
    }
}

TEST_CASE("affine point enumeration over small prime fields") {
    CurveModel c32 = curve32();
    CHECK(point_count(c32, 5) == 8);   // a_5 = -2
    CHECK(point_count(c32, 7) == 8);   // a_7 = 0
    CHECK(point_count(c32, 11) == 12); // a_11 = 0
    CHECK(point_count(c32, 13) == 8);  // a_13 = 6
    CHECK_THROWS_AS(point_count(c32, 3), Error);
    CHECK_THROWS_AS(point_count(curve_normalize(Rat(1, 5), Rat(1)), 5), BadReduction);
}

TEST_CASE("supersingularity: Hasse witness and point count agree") {
    CurveModel c32 = curve32();

    SupersingularReport s3 = is_supersingular(c32, 3);
    CHECK(s3.supersingular);
    CHECK_FALSE(s3.dual_checked); // characteristic 3 has no second witness

    SupersingularReport s5 = is_supersingular(c32, 5);
    CHECK_FALSE(s5.supersingular);
    CHECK(s5.dual_checked);
    CHECK(s5.hasse_residue == 3); // -192 mod 5
    CHECK(s5.count == 8);

    SupersingularReport s7 = is_supersingular(c32, 7);
    CHECK(s7.supersingular);
    CHECK(s7.dual_checked);
    CHECK(s7.hasse_residue == 0);
    CHECK(s7.count == 8);

    CHECK(is_supersingular(c32, 11).supersingular);

    SupersingularReport s13 = is_supersingular(c32, 13);
    CHECK_FALSE(s13.supersingular);
    CHECK(s13.hasse_residue == 6); // E12 at (Q, R) = (-192, 0) mod 13
    CHECK(s13.count == 8);

    // j = 0: supersingular exactly at p = 2 mod 3
    CHECK(is_supersingular(curve_j0(), 5).supersingular);
    CHECK(is_supersingular(curve_j0(), 11).supersingular);
    CHECK_FALSE(is_supersingular(curve_j0(), 7).supersingular);
    CHECK_FALSE(is_supersingular(curve_j0(), 13).supersingular);

    CHECK_THROWS_AS(is_supersingular(c32, 2), Error);
    CHECK_THROWS_AS(is_supersingular(curve_j0(), 3), BadReduction);
}

TEST_CASE("mu residue against the weight p+1 Eisenstein value") {
    CurveModel c32 = curve32();

    MuCongruenceReport r3 = verify_mu_congruence(c32, 3);
    CHECK(r3.pass);
    CHECK(r3.mu_residue == 2);
    CHECK(r3.eisenstein_value == 2); // g2 mod 3 in characteristic 3
    CHECK(r3.e_unit);

    MuCongruenceReport r7 = verify_mu_congruence(c32, 7);
    CHECK(r7.pass);
    CHECK(r7.mu_residue == 1);
    CHECK(r7.eisenstein_value == 1); // -E8/12 mod 7
    CHECK(r7.e_unit);

    MuCongruenceReport r11 = verify_mu_congruence(c32, 11);
    CHECK(r11.pass);
    CHECK(r11.mu_residue == 9);

    MuCongruenceReport j0 = verify_mu_congruence(curve_j0(), 5);
    CHECK(j0.pass);
    CHECK(j0.mu_residue == 2); // -E6/12 = 72 mod 5

    CHECK_THROWS_AS(verify_mu_congruence(c32, 5), Error); // ordinary
}

TEST_CASE("weight p-1 and p+1 reductions share no factor") {
    PrimalityReport r5 = relative_primality_check(5);
    CHECK(r5.pass);
    CHECK(r5.eA == 1); // E4 = Q
    CHECK(r5.fA == 0);
    CHECK(r5.eB == 0); // E6 = R
    CHECK(r5.fB == 1);
    CHECK(r5.gcd_degree == 0);

    PrimalityReport r7 = relative_primality_check(7);
    CHECK(r7.pass);
    CHECK(r7.eA == 0);
    CHECK(r7.fA == 1);
    CHECK(r7.eB == 2);
    CHECK(r7.fB == 0);

    PrimalityReport r13 = relative_primality_check(13);
    CHECK(r13.pass);
    CHECK(r13.eA == 0); // 6Q^3 + 8R^2 mod 13
    CHECK(r13.fA == 0);
    CHECK(r13.eB == 2); // E14 = Q^2 R
    CHECK(r13.fB == 1);
    CHECK(r13.gcd_degree == 0);

    CHECK(relative_primality_check(11).pass);
    CHECK_THROWS_AS(relative_primality_check(4), Error);
}
