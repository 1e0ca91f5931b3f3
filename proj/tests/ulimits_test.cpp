#include "doctest.h"

#include <vector>

#include "padiclab/errors.hpp"
#include "padiclab/modforms.hpp"
#include "padiclab/qseries.hpp"
#include "padiclab/ulimits.hpp"

using namespace padiclab;

namespace {

const Builtin32& cast() {
    static Builtin32 b32 = builtin_32(600);
    return b32;
}

} // namespace

TEST_CASE("problem construction guards") {
    const Builtin32& b32 = cast();
    ULimitProblem prob = make_problem(b32.W1.truncated(243), b32.form, 3, 2, 1, 6);
    CHECK(prob.d(3) == 2);
    CHECK(prob.d(27) == 12);
    CHECK(prob.Phi.coeff(3) == Rat(2, 3)); // integral of W

    CHECK_THROWS_AS(make_problem(b32.W1.truncated(243), b32.form, 4, 1, 1, 2), Error);
    CHECK_THROWS_AS(make_problem(b32.W1.truncated(243), b32.form, 5, 1, 1, 2), Error);
    CHECK_THROWS_AS(make_problem(b32.W1.truncated(243), b32.form, 13, 1, 1, 2), Error);
    CHECK_THROWS_AS(make_problem(b32.W1.truncated(100), b32.form, 3, 2, 1, 6), Error);
    CHECK_THROWS_AS(make_problem(b32.W1.truncated(243), b32.form, 3, 2, 0, 6), Error);
    CHECK_THROWS_AS(make_problem(b32.W1.truncated(243), nullptr, 3, 2, 1, 6), Error);
}

TEST_CASE("approximant towers d(p^k)/(-p)^m at p = 3 and p = 7") {
    const Builtin32& b32 = cast();
    ULimitProblem p3 = make_problem(b32.W1.truncated(243), b32.form, 3, 2, 1, 6);
    BetaGammaEstimate est = estimate_beta_gamma(p3);
    CHECK(est.gamma_approximants == std::vector<Rat>{Rat(2), Rat(-4), Rat(-346)});
    CHECK(est.beta_approximants == std::vector<Rat>{Rat(0), Rat(0), Rat(0)});
    CHECK(est.beta.cauchy);
    CHECK(est.gamma.cauchy);
    CHECK(est.gamma.profile == std::vector<long>{1, 2});
    CHECK(est.gamma.value.residue_mod(2) == 5); // -346 mod 9
    CHECK(est.gamma.value.residue_mod(1) == 2);

    ULimitProblem p7 = make_problem(b32.W1.truncated(343), b32.form, 7, 1, 1, 4);
    BetaGammaEstimate est7 = estimate_beta_gamma(p7);
    CHECK(est7.gamma_approximants == std::vector<Rat>{Rat(1), Rat(43)});
    CHECK(est7.gamma.value.residue_mod(1) == 1); // 43 mod 7
}

TEST_CASE("eigen-directions: W = g and W = g(q^p) are pure beta and gamma") {
    const Builtin32& b32 = cast();
    ULimitProblem along_g = make_problem(b32.g.truncated(243), b32.form, 3, 2, 1, 6);
    BetaGammaEstimate eg = estimate_beta_gamma(along_g);
    CHECK(eg.beta_approximants == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
    CHECK(eg.gamma_approximants == std::vector<Rat>{Rat(0), Rat(0), Rat(0)});

    QSeries shifted = rescale(b32.g, 3).truncated(243);
    ULimitProblem along_v = make_problem(shifted, b32.form, 3, 2, 1, 6);
    BetaGammaEstimate ev = estimate_beta_gamma(along_v);
    CHECK(ev.beta_approximants == std::vector<Rat>{Rat(0), Rat(0), Rat(0)});
    CHECK(ev.gamma_approximants == std::vector<Rat>{Rat(1), Rat(1), Rat(1)});
}

TEST_CASE("U-iterates of the regularized series converge to the eigenform") {
    const Builtin32& b32 = cast();
    ULimitProblem prob = make_problem(b32.W1.truncated(540), b32.form, 3, 1, 20, 4);
    ConvergenceReport rep = u_iterate_certify(prob);
    CHECK(rep.pass);
    CHECK(rep.beta.residue_mod(1) == 0);
    CHECK(rep.gamma.residue_mod(1) == 2); // -4 mod 3
    CHECK(rep.gamma_approximants == std::vector<Rat>{Rat(2), Rat(-4)});
    REQUIRE(rep.table.size() == 2);
    CHECK(rep.table[0].min_ord == 1);
    CHECK(rep.table[1].min_ord == 2);
    CHECK(rep.table[0].q_coeff_one);
    CHECK(rep.table[1].q_coeff_one);
    CHECK(valuation(rep.table[0].C, Int(3)) == 0); // unit normalizer first
    CHECK(valuation(rep.table[1].C, Int(3)) == 1);
}

TEST_CASE("the second weakly holomorphic input converges faster") {
    const Builtin32& b32 = cast();
    ULimitProblem prob = make_problem(b32.W2.truncated(540), b32.form, 3, 1, 20, 4);
    BetaGammaEstimate est = estimate_beta_gamma(prob);
    CHECK(est.gamma_approximants == std::vector<Rat>{Rat(242), Rat(-357364)});
    ConvergenceReport rep = u_iterate_certify(prob);
    CHECK(rep.pass);
    CHECK(rep.table[0].min_ord == 2);
    CHECK(rep.table[1].min_ord == 4);
}

TEST_CASE("regularized coefficient accessor matches its series") {
    const Builtin32& b32 = cast();
    ULimitProblem prob = make_problem(b32.W1.truncated(243), b32.form, 3, 2, 1, 6);
    Regularized reg = regularize(prob, Rat(0), Rat(-4));
    for (long n = 1; n <= 60; ++n) CHECK(reg.C(n) == reg.series.coeff(n));
    CHECK(reg.C(3) == 2 - (-4) * b32.form->b_at(9)); // d - gamma b(pn)
}

TEST_CASE("zeta-route input is the negated eta-quotient input") {
    const Builtin32& b32 = cast();
    ULimitProblem zp = make_zeta_route_problem(b32.curve, b32.form, 3, 1, 1, 4, 27);
    long upto = std::min(zp.W.trunc(), 27L);
    CHECK(agree_through(zp.W, (-b32.W1).truncated(zp.W.trunc()), upto));
    BetaGammaEstimate est = estimate_beta_gamma(zp);
    CHECK(est.gamma_approximants == std::vector<Rat>{Rat(-2), Rat(4)});
}

TEST_CASE("shifting by the eigenform moves beta only") {
    const Builtin32& b32 = cast();
    ULimitProblem prob = make_problem(b32.W1.truncated(243), b32.form, 3, 2, 1, 6);
    ShiftReport sr = eichler_shift_invariance(prob, Rat(5));
    CHECK(sr.pass);
    CHECK(sr.c == 5);
    CHECK(sr.gamma_identical);
    CHECK(sr.beta_shifted_by_c);
}
