#pragma once

#include <string>
#include <utility>
#include <vector>

#include "padiclab/modforms.hpp"
#include "padiclab/padic.hpp"
#include "padiclab/qseries.hpp"
#include "padiclab/rational.hpp"
#include "padiclab/weierstrass.hpp"

namespace padiclab {

// Formal group data of a curve at the parameter t = -2x/y: the logarithm
// ell = t + ... and the second-kind integral xi = -1/t + ....
struct FormalLog {
    CurveModel curve;
    QSeries ell;
    QSeries xi;
    long T = 0;
};

// Expands x(t), y(t) from w = z^3 + A z w^2 + B w^3 (short form coefficients
// A = -g2/4, B = -g3/4), then integrates dx/y and x dx/y.
FormalLog ec_formal_expansion(const CurveModel& curve, long T);

// t(q) = reversion(ell) o EichlerIntegral(b), the strict-isomorphism
// transport of q to the curve parameter. Independent of p.
QSeries honda_t_series(const Eigenform& b, const FormalLog& log, long T);

struct HondaReport {
    long p = 0;
    long T = 0;
    long min_ord = 0;      // min over n of ord_p(coefficient of t(q))
    long at_exponent = 0;  // where the min occurs
    bool pass = false;     // min_ord >= 0
};

HondaReport honda_check(const Eigenform& b, const FormalLog& log, long p, long T);
// Same check against a precomputed t(q); avoids re-deriving the reversion.
HondaReport honda_check(const QSeries& t_of_q, long p);

struct DieudonneSolution {
    Int p;
    PAdicApprox lambda_p;
    PAdicApprox mu_p;
    long lambda_digits = 0; // certified modulus exponent for lambda
    long mu_digits = 0;
    long certified_precision = 0; // min of the two
    // (exponent, ord_p margin) for every constrained coefficient.
    std::vector<std::pair<long, long>> residual_report;
};

// Solves xi + lambda*ell + (mu/p)*ell(t^p) in Z_p[[t]] for (lambda, mu) mod
// p^K from the linear congruences forced by denominators, then verifies the
// membership for every exponent through T with the solved representatives.
// pre: good supersingular reduction at p (dual witness), T >= p^2 (K+1).
DieudonneSolution dieudonne_solve(const FormalLog& log, long p, long T, long K);

// Substitutes t = subst(u) (subst = u + integer higher terms) into ell, xi.
// Strict isomorphism: dieudonne_solve output is invariant.
FormalLog transform_log(const FormalLog& log, const QSeries& subst);

// ell_t(u) = sum_{n>=0} (-1)^n u^{p^{2n}} / p^n through u^T.
QSeries p_typical_log(long p, long T);

// p * [u^p] zeta(Lambda, ell_t(u)) reduced mod p; equals -c_{(p+1)/2} mod p.
Int mu_mod_p_via_ptypical(const CurveModel& curve, long p);

struct FglIntegralityReport {
    long p = 0;
    long D = 0;
    long min_ord = 0;
    bool integral = false;
    bool identity_slice = false; // G(u, 0) = u
    bool symmetric = false;      // G(u, v) = G(v, u)
    bool pass = false;
};

// G(u,v) = ell^{-1}(ell(u) + ell(v)) to total degree D; checks p-integrality,
// the identity slice, and commutativity.
FglIntegralityReport fgl_addition_integrality(const FormalLog& log, long p, long D);

} // namespace padiclab
