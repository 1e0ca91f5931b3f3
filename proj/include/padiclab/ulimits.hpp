#pragma once

#include <memory>
#include <string>
#include <vector>

#include "padiclab/modforms.hpp"
#include "padiclab/padic.hpp"
#include "padiclab/qseries.hpp"
#include "padiclab/weierstrass.hpp"

namespace padiclab {

// One U-limit verification instance: a weakly holomorphic weight-2 input W,
// its formal integral Phi = sum d(n)/n q^n, and the target eigenform b with
// b(p) = 0.
struct ULimitProblem {
    QSeries W;
    QSeries Phi;
    std::shared_ptr<const Eigenform> b;
    long p = 0;
    long m_max = 0;
    long n_check = 0;
    long prec_cap = 0;

    // d(n), the coefficient of q^n in W.
    Rat d(long n) const { return W.coeff(n); }
};

// Builds Phi = formal_integral(W) (W must have no constant term) and
// validates b(p) = 0 plus the truncation budget
// trunc(W) >= p^{2 m_max + 1} * n_check.
ULimitProblem make_problem(QSeries W, std::shared_ptr<const Eigenform> b, long p,
                           long m_max, long n_check, long prec_cap);

// Curve-generic source: W = -D(zeta(Lambda, EichlerIntegral(b))), expanded
// through q^T before problem assembly.
ULimitProblem make_zeta_route_problem(const CurveModel& curve,
                                      std::shared_ptr<const Eigenform> b, long p,
                                      long m_max, long n_check, long prec_cap, long T);

struct BetaGammaEstimate {
    LimitEstimate beta;  // from d(p^{2m}) / (-p)^m
    LimitEstimate gamma; // from d(p^{2m+1}) / (-p)^m
    std::vector<Rat> beta_approximants;
    std::vector<Rat> gamma_approximants;
};

// Throws NonCauchy when either profile degrades (wrong parity, b(p) != 0,
// or corrupt input).
BetaGammaEstimate estimate_beta_gamma(const ULimitProblem& problem);

// W minus beta*g minus gamma*(the series with coefficient b(pn) at q^n),
// so the coefficient accessor is C(n) = d(n) - beta*b(n) - gamma*b(pn) and
// the U^{2m+1} normalizer C(p^{2m+1}) is the iterate's own q-coefficient.
struct Regularized {
    QSeries series;
    Rat beta;
    Rat gamma;
    const ULimitProblem* problem = nullptr;

    Rat C(long n) const;
};

Regularized regularize(const ULimitProblem& problem, const Rat& beta, const Rat& gamma);

struct ConvergenceRow {
    long m = 0;
    Rat C;              // C(p^{2m+1}), the normalizer
    long min_ord = 0;   // min over 1<=n<=n_check of ord_p(R_m(n) - b(n))
    bool q_coeff_one = false;
};

struct ConvergenceReport {
    PAdicApprox beta;
    PAdicApprox gamma;
    std::vector<Rat> gamma_approximants;
    std::vector<ConvergenceRow> table;
    bool pass = false; // minima strictly positive, weakly increasing, q-coeff 1
};

// R_m = (regularized | U^{2m+1}) / C(p^{2m+1}) against the first n_check
// coefficients of b, for m = 0..m_max.
ConvergenceReport u_iterate_certify(const ULimitProblem& problem);

struct ShiftReport {
    Rat c;
    bool gamma_identical = false; // term-by-term equality of approximants
    bool beta_shifted_by_c = false;
    bool pass = false;
};

// Replaces Phi by Phi + c*EichlerIntegral(b) (so W by W + c*b) and compares
// estimates.
ShiftReport eichler_shift_invariance(const ULimitProblem& problem, const Rat& c);

} // namespace padiclab
