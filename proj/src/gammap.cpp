#include "padiclab/gammap.hpp"

#include <algorithm>

#include "padiclab/errors.hpp"

namespace padiclab {

Int gamma_p_integer(const Int& x, long p, long N) {
    if (x < 2) throw Error("gamma_p_integer: x must be >= 2");
    if (N < 1) throw Error("gamma_p_integer: N must be >= 1");
    const Int P(p);
    const Int mod = pow_int(P, static_cast<unsigned long>(N));
    Int acc(1);
    for (Int j(1); j < x; ++j) {
        if (j % P == 0) continue;
        acc = (acc * j) % mod;
    }
    if (mpz_odd_p(x.get_mpz_t())) acc = mod - acc; // (-1)^x
    return acc % mod;
}

GammaValue gamma_p(const Rat& x, long p, long N) {
    if (N < 1) throw Error("gamma_p: N must be >= 1");
    const Int P(p);
    const Int mod = pow_int(P, static_cast<unsigned long>(N));
    Int lift = reduce_mod(x, P, N); // throws ArgumentNotPAdicInteger when p | den
    while (lift < 2) lift += mod;
    Int value = gamma_p_integer(lift, p, N);
    GammaValue out;
    out.p = p;
    out.argument = x;
    out.value = PAdicApprox::from_residue(value, P, N);
    return out;
}

long class_number_h(long p) {
    if (p <= 3 || p % 4 != 3) throw BadDiscriminant("need p ≡ 3 mod 4, p > 3");
    const Int P(p);
    long sum = 0;
    for (long a = 1; a < p; ++a)
        sum += legendre_symbol(Int(a), P) * a;
    long h = -sum / p;
    if (h <= 0 || -sum % p != 0) throw BadDiscriminant("Dirichlet sum not divisible by p");
    return h;
}

MordellReport mordell_sign_check(long p) {
    MordellReport rep;
    rep.p = p;
    rep.h = class_number_h(p);
    const Int P(p);
    Int fact(1);
    for (long j = 2; j <= (p - 1) / 2; ++j) fact = (fact * j) % P;
    rep.factorial_residue = fact;
    rep.expected_sign = ((1 + rep.h) / 2) % 2 == 0 ? 1 : -1;
    Int expect = rep.expected_sign == 1 ? Int(1) : P - 1;
    rep.pass = (fact == expect);
    return rep;
}

Int catalan(long n) {
    if (n < 0) throw Error("catalan: n must be >= 0");
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(2 * n), static_cast<unsigned long>(n));
    Int out;
    mpz_divexact_ui(out.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n + 1));
    return out;
}

namespace {

Int central_binom(long n) {
    Int b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(2 * n), static_cast<unsigned long>(n));
    return b;
}

} // namespace

CatalanSequence catalan_gamma_sequence(long p, long m_max) {
    if (p % 4 != 3) throw BadDiscriminant("catalan_gamma_sequence: need p ≡ 3 mod 4");
    if (m_max < 0) throw Error("catalan_gamma_sequence: m_max must be >= 0");
    // budget: p^{2 m_max + 1} <= 2*10^5
    {
        Int top = pow_int(Int(p), static_cast<unsigned long>(2 * m_max + 1));
        if (top > 200000) throw BudgetExceeded("p^(2m+1) exceeds 2*10^5");
    }
    CatalanSequence out;
    out.p = p;
    out.m_max = m_max;
    const int chi2 = legendre_symbol(Int(2), Int(p));
    long podd = p; // p^{2m+1}
    long peven = 1; // p^{2m}
    for (long m = 0; m <= m_max; ++m) {
        if ((podd + 1) % 4 != 0 || (peven - 1) % 4 != 0)
            throw IndexNotIntegral("Catalan index not integral at m = " + std::to_string(m));
        long ntop = (podd + 1) / 4;
        long nbot = (peven - 1) / 4;
        Rat ratio = Rat(5 * chi2) * Rat(catalan(ntop)) / (Rat(3) * Rat(catalan(nbot)));
        Rat binform = Rat(chi2) * Rat(central_binom(ntop)) / Rat(central_binom(nbot));
        ratio.canonicalize();
        binform.canonicalize();
        out.ratio_form.push_back(ratio);
        out.binomial_form.push_back(binform);
        peven = podd * p;
        podd = peven * p;
    }
    std::vector<Rat> even_sub;
    for (long m = 0; m <= m_max; m += 2) even_sub.push_back(out.ratio_form[static_cast<size_t>(m)]);
    out.even_m_limit = try_padic_limit_estimate(even_sub, Int(p), 2 * m_max + 1);
    out.last_value = out.ratio_form.back();
    return out;
}

GammaClosedForm gamma_closed_form(long p, long N) {
    if (p % 4 != 3) throw BadDiscriminant("gamma_closed_form: need p ≡ 3 mod 4");
    GammaClosedForm out;
    out.p = p;
    const Int P(p);
    const Int mod = pow_int(P, static_cast<unsigned long>(N));
    Int ghalf = gamma_p(Rat(1, 2), p, N).value.residue_mod(N);
    Int gquarter = gamma_p(Rat(1, 4), p, N).value.residue_mod(N);
    const int chi2 = legendre_symbol(Int(2), P);
    Int q2inv = inv_mod((gquarter * gquarter) % mod, mod);
    Int v1 = (Int(8 * chi2) * ghalf % mod) * q2inv % mod;
    v1 = ((v1 % mod) + mod) % mod;

    // Mordell sign replaces Gamma_p(1/2): (-1)^{(1+h)/2} for p > 3, +1 at
    // p = 3 where Gamma_3(1/2) = 1.
    int s = 1;
    if (p > 3) {
        long h = class_number_h(p);
        s = ((1 + h) / 2) % 2 == 0 ? 1 : -1;
    }
    int sign2 = chi2 * s;
    Int v2 = (Int(8 * sign2) * q2inv) % mod;
    v2 = ((v2 % mod) + mod) % mod;

    out.value = PAdicApprox::from_residue(v1, P, N);
    out.sign_form = PAdicApprox::from_residue(v2, P, N);
    out.forms_agree = (v1 == v2);
    return out;
}

BinomOrdReport binom_ord_check(long p, long m) {
    if (m < 0 || m % 2 != 0) throw Error("binom_ord_check: m must be even and >= 0");
    if (p % 4 != 3) throw BadDiscriminant("binom_ord_check: need p ≡ 3 mod 4");
    BinomOrdReport rep;
    rep.p = p;
    rep.m = m;
    const Int P(p);
    Int pm1 = pow_int(P, static_cast<unsigned long>(m + 1)); // p^{m+1}
    Int pm = pow_int(P, static_cast<unsigned long>(m));      // p^m
    long nbig = Int((pm1 + 1) / 4).get_si();
    long nsmall = Int((pm - 1) / 4).get_si();
    rep.ord_big = valuation_int(central_binom(nbig), P);
    rep.ord_small = valuation_int(central_binom(nsmall), P);
    rep.pass = (rep.ord_big == m / 2) && (rep.ord_small == m / 2);
    return rep;
}

long binom_central_ord_digits(long p, const Int& n) {
    auto digit_sum = [&](Int x) {
        Int sum(0);
        Int P(p);
        while (x > 0) {
            sum += x % P;
            x /= P;
        }
        return sum;
    };
    Int s = 2 * digit_sum(n) - digit_sum(2 * n);
    Int ord = s / (p - 1);
    return ord.get_si();
}

} // namespace padiclab
