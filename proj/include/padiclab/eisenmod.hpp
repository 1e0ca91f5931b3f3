#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "padiclab/rational.hpp"
#include "padiclab/weierstrass.hpp"

namespace padiclab {

// Isobaric polynomial in Q (weight 4) and R (weight 6).
struct WeightedPoly {
    long k = 0;                                // total weight
    std::map<std::pair<long, long>, Rat> terms; // (a, b) -> coeff, 4a + 6b = k

    std::string str() const;
};

// E_k as a weighted polynomial in Q, R via an exact linear solve against the
// q-expansion. pre: k >= 4 even.
WeightedPoly ek_as_QR(long k);

// Substitute Q = 12 g2, R = -216 g3.
Rat evaluate_weighted(const WeightedPoly& poly, const CurveModel& curve);

// Brute-force count of points on y^2 = x^3 + Ax + B over F_p, including the
// point at infinity. pre: good reduction, p >= 5.
long point_count(const CurveModel& curve, long p);

struct SupersingularReport {
    long p = 0;
    bool supersingular = false;
    Int hasse_residue;      // E_{p-1}(curve) mod p, p >= 5
    long count = -1;        // point count, p >= 5
    bool dual_checked = false;
};

// Dual witness: Hasse invariant E_{p-1} ≡ 0 mod p vs point count = p + 1.
// Disagreement is a hard WitnessDisagreement failure. p = 3 uses the
// discriminant route only (good reduction at 3 forces supersingularity here).
SupersingularReport is_supersingular(const CurveModel& curve, long p);

struct MuCongruenceReport {
    long p = 0;
    Int mu_residue;       // from dieudonne_solve at K = 1
    Int eisenstein_value; // -E_{p+1}/12 mod p (p >= 5); g2 mod 3 at p = 3
    bool e_unit = false;  // E_{p+1} a p-adic unit (p >= 5); E_4 ≡ 0 at p = 3
    bool congruence = false;
    bool pass = false;
};

// mu_p ≡ -E_{p+1}/12 mod p and E_{p+1} ≢ 0 mod p for supersingular p >= 5;
// at p = 3: mu_3 ≡ g2 ≢ 0 mod 3 and E_4 ≡ 0 mod 3.
MuCongruenceReport verify_mu_congruence(const CurveModel& curve, long p);

struct PrimalityReport {
    long p = 0;
    long eA = 0, fA = 0; // stripped Q-, R-exponents of A = E_{p-1} mod p
    long eB = 0, fB = 0;
    long gcd_degree = -1; // in s = Q^3/R^2 after stripping
    bool pass = false;
};

// A = E_{p-1}, B = E_{p+1} mod p: strips monomial factors, descends to
// univariate polynomials, and asserts gcd = 1 with eA <= 1, fA <= 1.
PrimalityReport relative_primality_check(long p);

} // namespace padiclab
