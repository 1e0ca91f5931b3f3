#pragma once

#include <vector>

#include "padiclab/padic.hpp"
#include "padiclab/rational.hpp"

namespace padiclab {

// Morita Gamma_p(x) = (-1)^x prod_{1<=j<x, p∤j} j for integer x >= 2,
// reduced mod p^N.
Int gamma_p_integer(const Int& x, long p, long N);

struct GammaValue {
    long p;
    Rat argument;
    PAdicApprox value; // unit, precision N
};

// Gamma_p at a p-adic integer rational argument: lifts x to an integer
// x~ >= 2 with x~ ≡ x mod p^N and evaluates the integer product. Continuity
// (x ≡ y mod p^N implies values congruent mod p^N) justifies the precision.
GammaValue gamma_p(const Rat& x, long p, long N);

// h(-p) = (-1/p) sum_{a=1}^{p-1} (a|p) a for p ≡ 3 mod 4, p > 3.
long class_number_h(long p);

struct MordellReport {
    long p = 0;
    long h = 0;
    Int factorial_residue; // ((p-1)/2)! mod p
    int expected_sign = 0; // (-1)^{(1+h)/2}
    bool pass = false;
};

// ((p-1)/2)! ≡ (-1)^{(1+h(-p))/2} mod p.
MordellReport mordell_sign_check(long p);

// C(n) = binom(2n, n)/(n+1), exact.
Int catalan(long n);

struct CatalanSequence {
    long p = 0;
    long m_max = 0;
    // r_m = (2|p) * 5 C((p^{2m+1}+1)/4) / (3 C((p^{2m}-1)/4)), m = 0..m_max.
    std::vector<Rat> ratio_form;
    // (2|p) * binom((p^{2m+1}+1)/2, (p^{2m+1}+1)/4) / binom((p^{2m}-1)/2, (p^{2m}-1)/4)
    std::vector<Rat> binomial_form;
    LimitEstimate even_m_limit;  // profile over the even-m subsequence
    Rat last_value;              // r_{m_max}, the working limit value
};

// pre: p ≡ 3 mod 4 (BadDiscriminant); budget p^{2m_max+1} <= 2*10^5
// (BudgetExceeded). The even-m subsequence carries the Cauchy profile; odd-m
// terms are computed and reported only.
CatalanSequence catalan_gamma_sequence(long p, long m_max);

struct GammaClosedForm {
    long p = 0;
    PAdicApprox value;      // 8 (2|p) Gamma_p(1/2) / Gamma_p(1/4)^2
    PAdicApprox sign_form;  // (2|p) (-1)^{(1+h(-p))/2} 8 / Gamma_p(1/4)^2 for
                            // p > 3; (2|3) 8 / Gamma_3(1/4)^2 at p = 3
    bool forms_agree = false;
};

// pre: p ≡ 3 mod 4. Asserts the two expressions agree mod p^N.
GammaClosedForm gamma_closed_form(long p, long N);

struct BinomOrdReport {
    long p = 0;
    long m = 0;
    long ord_big = 0;   // ord_p binom((p^{m+1}+1)/2, (p^{m+1}+1)/4)
    long ord_small = 0; // ord_p binom((p^m-1)/2, (p^m-1)/4)
    bool pass = false;  // both equal m/2
};

// pre: m even, p ≡ 3 mod 4. Exact big-integer binomials; ord via p-removal.
BinomOrdReport binom_ord_check(long p, long m);

// Legendre digit route: ord_p binom(2n, n) = (2 s_p(n) - s_p(2n)) / (p - 1);
// used as the independent cross-check of binom_ord_check.
long binom_central_ord_digits(long p, const Int& n);

} // namespace padiclab
