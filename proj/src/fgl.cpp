#include "padiclab/fgl.hpp"

#include <algorithm>

#include "padiclab/eisenmod.hpp"
#include "padiclab/errors.hpp"

namespace padiclab {

namespace {

long val_or_inf(const Rat& x, const Int& p) {
    return x == 0 ? VAL_INF : valuation(x, p);
}

long val_or_inf(const Int& x, const Int& p) {
    return x == 0 ? VAL_INF : valuation_int(x, p);
}

Int mod_pos(const Int& x, const Int& m) {
    Int r = x % m;
    if (r < 0) r += m;
    return r;
}

} // namespace

FormalLog ec_formal_expansion(const CurveModel& curve, long T) {
    if (curve.discriminant() == 0) throw SingularCurve("formal expansion needs a nonsingular curve");
    if (T < 1) throw Error("ec_formal_expansion: T must be >= 1");
    const long N = T + 4;
    const Rat A = curve.short_A();
    const Rat B = curve.short_B();
    const bool cubic = (B != 0);

    // w(z) = z^3 + A z w^2 + B w^3 solved coefficientwise; w2 accumulates w^2
    // and is final at index m once w is committed through m - 3.
    std::vector<Rat> w(static_cast<size_t>(N) + 1), w2(static_cast<size_t>(N) + 1);
    auto commit = [&](long n) {
        if (w[static_cast<size_t>(n)] == 0) return;
        long top = std::min(n, N - n);
        for (long i = 3; i <= top; ++i) {
            if (w[static_cast<size_t>(i)] == 0) continue;
            w2[static_cast<size_t>(n + i)] +=
                (i == n ? 1 : 2) * w[static_cast<size_t>(n)] * w[static_cast<size_t>(i)];
        }
    };
    w[3] = 1;
    commit(3);
    for (long n = 4; n <= N; ++n) {
        Rat val = A * w2[static_cast<size_t>(n - 1)];
        if (cubic) {
            Rat acc(0);
            for (long i = 3; i <= n - 6; ++i)
                if (w[static_cast<size_t>(i)] != 0) acc += w[static_cast<size_t>(i)] * w2[static_cast<size_t>(n - i)];
            val += B * acc;
        }
        w[static_cast<size_t>(n)] = val;
        commit(n);
    }

    QSeries W(3, N, std::vector<Rat>(w.begin() + 3, w.end()));
    QSeries invW = series_inverse(W);
    QSeries x = series_mul(QSeries::monomial(Rat(1), 1), invW);
    QSeries dlog = series_mul(d_operator(W), invW); // z w'/w
    QSeries ellprime = Rat(1, 2) * (dlog - QSeries::one());
    QSeries xiprime = series_mul(x, ellprime);

    QSeries ell = formal_integral(ellprime.shifted(1)).truncated(T);
    QSeries xi = formal_integral(xiprime.shifted(1)).truncated(std::min(T, xiprime.trunc() + 1));
    if (ell.coeff(1) != 1) throw Error("formal logarithm not normalized");
    if (xi.coeff(-1) != -1) throw Error("second-kind pole not normalized");
    return FormalLog{curve, ell, xi, T};
}

QSeries honda_t_series(const Eigenform& b, const FormalLog& log, long T) {
    long Teff = std::min(T, log.ell.trunc());
    QSeries Eg = eichler_integral(b, Teff);
    QSeries rev = series_reversion(log.ell, Teff);
    return compose_inner(rev, Eg);
}

HondaReport honda_check(const QSeries& t_of_q, long p) {
    HondaReport rep;
    rep.p = p;
    rep.T = t_of_q.trunc();
    auto [ord, at] = min_ord_p(t_of_q, Int(p));
    rep.min_ord = ord;
    rep.at_exponent = at;
    rep.pass = ord >= 0;
    return rep;
}

HondaReport honda_check(const Eigenform& b, const FormalLog& log, long p, long T) {
    if (p < 3) throw Error("honda_check: p must be odd");
    return honda_check(honda_t_series(b, log, T), p);
}

DieudonneSolution dieudonne_solve(const FormalLog& log, long p, long T, long K) {
    if (K < 1) throw Error("dieudonne_solve: target precision must be >= 1");
    const long Teff = std::min({T, log.ell.trunc(), log.xi.trunc()});
    if (Teff < p * p * (K + 1))
        throw Error("dieudonne_solve: need T >= p^2 (K+1), have T = " + std::to_string(Teff));
    SupersingularReport ss = is_supersingular(log.curve, p);
    if (!ss.supersingular)
        throw BadReduction("dieudonne_solve: reduction at p = " + std::to_string(p) +
                           " is ordinary");

    const Int P(p);
    const Int mod = pow_int(P, K);

    struct Row {
        long e;
        long d;
        Int A, B, C;
    };
    std::vector<Row> rows;
    for (long e = 1; e <= Teff; ++e) {
        Rat a = log.xi.coeff(e);
        Rat b = log.ell.coeff(e);
        Rat c = (e % p == 0) ? log.ell.coeff(e / p) / Rat(p) : Rat(0);
        long d = -std::min({val_or_inf(a, P), val_or_inf(b, P), val_or_inf(c, P), 0L});
        if (d == 0) continue;
        // scale to integrality, then embed the depth-d congruence in mod p^K
        Int lift = (d < K) ? pow_int(P, K - d) : Int(1);
        auto enc = [&](const Rat& x) {
            Rat scaled = x * Rat(pow_int(P, d));
            return mod_pos(reduce_mod(scaled, P, K) * lift, mod);
        };
        rows.push_back(Row{e, d, enc(a), enc(b), enc(c)});
    }
    if (rows.empty())
        throw NoUnitDeterminant("no denominator constraints through T = " + std::to_string(Teff));

    // first pivot: smallest entry valuation over both unknown columns
    long v1 = VAL_INF;
    size_t i1 = 0;
    int col1 = 0; // 0 = lambda (B), 1 = mu (C)
    for (size_t i = 0; i < rows.size(); ++i) {
        long vB = val_or_inf(rows[i].B, P);
        long vC = val_or_inf(rows[i].C, P);
        if (vB < v1) { v1 = vB; i1 = i; col1 = 0; }
        if (vC < v1) { v1 = vC; i1 = i; col1 = 1; }
    }
    if (v1 > 0) throw NoUnitDeterminant("no unit pivot; raise T or lower K");

    const Row r1 = rows[i1];
    const Int pivot = (col1 == 0) ? r1.B : r1.C;
    const Int pinv = inv_mod(pivot, mod);
    std::vector<Row> elim;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i == i1) continue;
        const Int& coef = (col1 == 0) ? rows[i].B : rows[i].C;
        Int f = mod_pos(coef * pinv, mod);
        Row r = rows[i];
        r.A = mod_pos(r.A - f * r1.A, mod);
        r.B = mod_pos(r.B - f * r1.B, mod);
        r.C = mod_pos(r.C - f * r1.C, mod);
        elim.push_back(r);
    }

    // second pivot in the complementary column
    long v2 = VAL_INF;
    size_t i2 = 0;
    for (size_t i = 0; i < elim.size(); ++i) {
        long v = val_or_inf(col1 == 0 ? elim[i].C : elim[i].B, P);
        if (v < v2) { v2 = v; i2 = i; }
    }
    if (v2 >= K)
        throw NoUnitDeterminant("second unknown unconstrained mod p^" + std::to_string(K));

    const Row r2 = elim[i2];
    const Int coef2 = (col1 == 0) ? r2.C : r2.B;
    const Int pv2 = pow_int(P, v2);
    if (r2.A % pv2 != 0)
        throw MembershipViolation("inconsistent congruence at exponent " + std::to_string(r2.e));
    const long k2 = K - v2;
    const Int modk2 = pow_int(P, k2);
    Int u2 = mod_pos(coef2 / pv2, modk2);
    Int x2 = mod_pos(-(r2.A / pv2) * inv_mod(u2, modk2), modk2);

    // back-substitute into the pivot row
    const Int other1 = (col1 == 0) ? r1.C : r1.B;
    long vother1 = val_or_inf(other1, P);
    long k1 = (vother1 >= K) ? K : std::min(K, vother1 + k2);
    const Int modk1 = pow_int(P, k1);
    Int rhs = mod_pos(-(r1.A + other1 * x2), modk1);
    Int x1 = mod_pos(rhs * inv_mod(mod_pos(pivot, modk1), modk1), modk1);

    Int lam, mu;
    long klam, kmu;
    if (col1 == 0) { lam = x1; klam = k1; mu = x2; kmu = k2; }
    else { mu = x1; kmu = k1; lam = x2; klam = k2; }

    // exact membership verification with the solved representatives
    DieudonneSolution sol;
    sol.p = P;
    sol.lambda_p = PAdicApprox::from_residue(lam, P, klam);
    sol.mu_p = PAdicApprox::from_residue(mu, P, kmu);
    sol.lambda_digits = klam;
    sol.mu_digits = kmu;
    sol.certified_precision = std::min(klam, kmu);
    const Rat lamr(lam), mur(mu);
    for (long e = 1; e <= Teff; ++e) {
        Rat b = log.ell.coeff(e);
        Rat c = (e % p == 0) ? log.ell.coeff(e / p) / Rat(p) : Rat(0);
        // the representatives carry klam, kmu digits, so a row with deeper
        // denominators is only provable down to the lift-error floor
        long bound = 0;
        if (b != 0) bound = std::min(bound, klam + valuation(b, P));
        if (c != 0) bound = std::min(bound, kmu + valuation(c, P));
        Rat resid = log.xi.coeff(e) + lamr * b + mur * c;
        long v = val_or_inf(resid, P);
        if (v < bound)
            throw MembershipViolation("coefficient of t^" + std::to_string(e) +
                                      " has ord " + std::to_string(v) +
                                      ", provable floor " + std::to_string(bound));
        bool constrained = (val_or_inf(log.xi.coeff(e), P) < 0 || val_or_inf(b, P) < 0 ||
                            val_or_inf(c, P) < 0);
        if (constrained) sol.residual_report.emplace_back(e, v);
    }
    return sol;
}

FormalLog transform_log(const FormalLog& log, const QSeries& subst) {
    if (subst.order() != 1 || subst.coeff(1) != 1)
        throw Error("transform_log: substitution must be u + higher order");
    QSeries ell = compose_inner(log.ell, subst);
    QSeries xi = compose_inner(log.xi, subst);
    long T = std::min({log.T, ell.trunc(), xi.trunc()});
    return FormalLog{log.curve, ell.truncated(T), xi.truncated(T), T};
}

QSeries p_typical_log(long p, long T) {
    if (p < 2) throw Error("p_typical_log: p must be prime");
    if (T < 1) throw Error("p_typical_log: T must be >= 1");
    std::vector<Rat> c(static_cast<size_t>(T));
    long e = 1;
    long n = 0;
    Int denom(1);
    while (e <= T) {
        c[static_cast<size_t>(e - 1)] = Rat((n % 2 == 0) ? 1 : -1) / Rat(denom);
        if (e > T / (p * p)) break;
        e *= p * p;
        ++n;
        denom *= p;
    }
    return QSeries(1, T, std::move(c));
}

Int mu_mod_p_via_ptypical(const CurveModel& curve, long p) {
    if (p < 3) throw Error("mu_mod_p_via_ptypical: p must be odd");
    if (!curve.good_reduction(Int(p)))
        throw BadReduction("bad reduction at p = " + std::to_string(p));
    long K = (p + 5) / 2;
    QSeries zeta = zeta_z_series(wp_coefficients(curve, K));
    QSeries lt = p_typical_log(p, p + 3);
    QSeries comp = compose_inner(zeta, lt);
    return reduce_mod(comp.coeff(p) * Rat(p), Int(p), 1);
}

namespace {

// lower-triangular bivariate block, entries [i][j] with i + j <= D
using Bivar = std::vector<std::vector<Rat>>;

Bivar bivar_zero(long D) {
    return Bivar(static_cast<size_t>(D) + 1, std::vector<Rat>(static_cast<size_t>(D) + 1));
}

Bivar bivar_mul(const Bivar& a, const Bivar& b, long D) {
    Bivar out = bivar_zero(D);
    for (long i = 0; i <= D; ++i)
        for (long j = 0; i + j <= D; ++j) {
            const Rat& x = a[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (x == 0) continue;
            for (long k = 0; i + k <= D; ++k)
                for (long l = 0; i + j + k + l <= D; ++l) {
                    const Rat& y = b[static_cast<size_t>(k)][static_cast<size_t>(l)];
                    if (y == 0) continue;
                    out[static_cast<size_t>(i + k)][static_cast<size_t>(j + l)] += x * y;
                }
        }
    return out;
}

} // namespace

FglIntegralityReport fgl_addition_integrality(const FormalLog& log, long p, long D) {
    FglIntegralityReport rep;
    rep.p = p;
    rep.D = D;
    if (D < 1 || D > log.ell.trunc()) throw Error("fgl_addition_integrality: bad degree bound");
    if (!log.curve.good_reduction(Int(p)))
        throw BadReduction("bad reduction at p = " + std::to_string(p));

    Bivar X = bivar_zero(D);
    for (long e = 1; e <= D; ++e) {
        const Rat& le = log.ell.coeff(e);
        X[static_cast<size_t>(e)][0] += le;
        X[0][static_cast<size_t>(e)] += le;
    }
    QSeries rev = series_reversion(log.ell, D);
    Bivar acc = bivar_zero(D);
    for (long e = D; e >= 1; --e) {
        acc = bivar_mul(acc, X, D);
        acc[0][0] += rev.coeff(e);
    }
    Bivar G = bivar_mul(acc, X, D);

    const Int P(p);
    rep.min_ord = VAL_INF;
    rep.integral = true;
    rep.identity_slice = true;
    rep.symmetric = true;
    for (long i = 0; i <= D; ++i)
        for (long j = 0; i + j <= D; ++j) {
            const Rat& x = G[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (x != 0) rep.min_ord = std::min(rep.min_ord, valuation(x, P));
            if (j == 0 && x != Rat(i == 1 ? 1 : 0)) rep.identity_slice = false;
            if (x != G[static_cast<size_t>(j)][static_cast<size_t>(i)]) rep.symmetric = false;
        }
    rep.integral = rep.min_ord >= 0;
    rep.pass = rep.integral && rep.identity_slice && rep.symmetric;
    return rep;
}

} // namespace padiclab
