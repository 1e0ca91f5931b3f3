#include "padiclab/ulimits.hpp"

#include <algorithm>

#include "padiclab/errors.hpp"

namespace padiclab {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

long pow_long(long base, long e) {
    long out = 1;
    for (long i = 0; i < e; ++i) {
        if (out > (1L << 60) / base) throw Error("exponent budget overflow");
        out *= base;
    }
    return out;
}

} // namespace

ULimitProblem make_problem(QSeries W, std::shared_ptr<const Eigenform> b, long p,
                           long m_max, long n_check, long prec_cap) {
    if (!b) throw Error("make_problem: eigenform required");
    if (!is_prime(p)) throw Error("make_problem: p must be prime");
    if (m_max < 0 || n_check < 1 || prec_cap < 1) throw Error("make_problem: bad budgets");
    if (b->b_at(p) != 0)
        throw Error("make_problem: b(p) must vanish at p = " + std::to_string(p));
    long budget = pow_long(p, 2 * m_max + 1) * n_check;
    if (W.trunc() < budget)
        throw Error("make_problem: truncation " + std::to_string(W.trunc()) +
                    " below budget " + std::to_string(budget));
    ULimitProblem prob;
    prob.Phi = formal_integral(W);
    prob.W = std::move(W);
    prob.b = std::move(b);
    prob.p = p;
    prob.m_max = m_max;
    prob.n_check = n_check;
    prob.prec_cap = prec_cap;
    return prob;
}

ULimitProblem make_zeta_route_problem(const CurveModel& curve,
                                      std::shared_ptr<const Eigenform> b, long p,
                                      long m_max, long n_check, long prec_cap, long T) {
    long budget = pow_long(p, 2 * m_max + 1) * n_check;
    long Tx = std::max(T, budget + 2);
    QSeries Eg = eichler_integral(*b, Tx);
    long K = (Tx + 4) / 2 + 2;
    QSeries zeta = zeta_z_series(wp_coefficients(curve, K));
    QSeries Phi = -compose_inner(zeta, Eg);
    QSeries W = d_operator(Phi);
    return make_problem(std::move(W), std::move(b), p, m_max, n_check, prec_cap);
}

BetaGammaEstimate estimate_beta_gamma(const ULimitProblem& problem) {
    BetaGammaEstimate est;
    const long p = problem.p;
    Rat sign_pow(1); // (-p)^m
    for (long m = 0; m <= problem.m_max; ++m) {
        long even = pow_long(p, 2 * m);
        long odd = even * p;
        est.beta_approximants.push_back(problem.d(even) / sign_pow);
        est.gamma_approximants.push_back(problem.d(odd) / sign_pow);
        sign_pow *= -p;
    }
    est.beta = padic_limit_estimate(est.beta_approximants, Int(p), problem.prec_cap);
    est.gamma = padic_limit_estimate(est.gamma_approximants, Int(p), problem.prec_cap);
    return est;
}

Rat Regularized::C(long n) const {
    const Eigenform& b = *problem->b;
    return problem->d(n) - beta * Rat(b.b_at(n)) - gamma * Rat(b.b_at(problem->p * n));
}

Regularized regularize(const ULimitProblem& problem, const Rat& beta, const Rat& gamma) {
    Regularized out;
    out.beta = beta;
    out.gamma = gamma;
    out.problem = &problem;
    const long T = problem.W.trunc();
    const long p = problem.p;
    // the gamma term carries coefficient b(pn) at q^n, so the series
    // coefficients line up with the C accessor and the normalizer is the
    // iterate's own q-coefficient; b_at(pn) only ever factors primes <= T
    QSeries g = problem.b->series(T);
    std::vector<Rat> sc;
    sc.reserve(static_cast<size_t>(T));
    for (long n = 1; n <= T; ++n) sc.push_back(Rat(problem.b->b_at(p * n)));
    QSeries gshift(1, T, std::move(sc));
    out.series = problem.W - beta * g - gamma * gshift;
    return out;
}

ConvergenceReport u_iterate_certify(const ULimitProblem& problem) {
    ConvergenceReport rep;
    BetaGammaEstimate est = estimate_beta_gamma(problem);
    rep.beta = est.beta.value;
    rep.gamma = est.gamma.value;
    rep.gamma_approximants = est.gamma_approximants;
    const Rat beta = est.beta_approximants.back();
    const Rat gamma = est.gamma_approximants.back();
    Regularized reg = regularize(problem, beta, gamma);

    const long p = problem.p;
    const Int P(p);
    QSeries cur = u_operator(reg.series, p); // reg | U^{2m+1} as m advances
    bool pass = true;
    long prev_min = 0;
    for (long m = 0; m <= problem.m_max; ++m) {
        if (m > 0) cur = u_operator(u_operator(cur, p), p);
        Rat C = reg.C(pow_long(p, 2 * m + 1));
        if (C == 0)
            throw DivisionByNonUnit("normalizer C(p^" + std::to_string(2 * m + 1) +
                                    ") vanishes");
        QSeries R = (Rat(1) / C) * cur;
        ConvergenceRow row;
        row.m = m;
        row.C = C;
        row.q_coeff_one = (R.coeff(1) == 1);
        long minord = VAL_INF;
        for (long n = 1; n <= problem.n_check; ++n) {
            Rat diff = R.coeff(n) - Rat(problem.b->b_at(n));
            if (diff != 0) minord = std::min(minord, valuation(diff, P));
        }
        row.min_ord = minord;
        pass = pass && row.q_coeff_one && minord > 0 && minord >= prev_min;
        prev_min = minord;
        rep.table.push_back(row);
    }
    rep.pass = pass;
    return rep;
}

ShiftReport eichler_shift_invariance(const ULimitProblem& problem, const Rat& c) {
    ShiftReport rep;
    rep.c = c;
    QSeries g = problem.b->series(problem.W.trunc());
    ULimitProblem shifted = make_problem(problem.W + c * g, problem.b, problem.p,
                                         problem.m_max, problem.n_check, problem.prec_cap);
    BetaGammaEstimate base = estimate_beta_gamma(problem);
    BetaGammaEstimate moved = estimate_beta_gamma(shifted);
    rep.gamma_identical = (base.gamma_approximants == moved.gamma_approximants);
    rep.beta_shifted_by_c = true;
    for (size_t i = 0; i < base.beta_approximants.size(); ++i)
        if (moved.beta_approximants[i] != base.beta_approximants[i] + c)
            rep.beta_shifted_by_c = false;
    rep.pass = rep.gamma_identical && rep.beta_shifted_by_c;
    return rep;
}

} // namespace padiclab
