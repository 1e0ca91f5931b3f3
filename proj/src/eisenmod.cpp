#include "padiclab/eisenmod.hpp"

#include <algorithm>
#include <vector>

#include "padiclab/errors.hpp"
#include "padiclab/fgl.hpp"
#include "padiclab/modforms.hpp"

namespace padiclab {

namespace {

Rat rat_pow(const Rat& x, long e) {
    Rat out(1);
    for (long i = 0; i < e; ++i) out *= x;
    return out;
}

// Monomial support of a weight-k isobaric polynomial: 4a + 6b = k.
std::vector<std::pair<long, long>> monomials_of_weight(long k) {
    std::vector<std::pair<long, long>> monos;
    for (long b = 0; 6 * b <= k; ++b) {
        long rem = k - 6 * b;
        if (rem % 4 == 0) monos.push_back({rem / 4, b});
    }
    return monos;
}

} // namespace

std::string WeightedPoly::str() const {
    if (terms.empty()) return "0";
    std::string out;
    for (const auto& [ab, c] : terms) {
        if (!out.empty()) out += " + ";
        out += "(" + to_string(c) + ")";
        if (ab.first) out += "*Q^" + std::to_string(ab.first);
        if (ab.second) out += "*R^" + std::to_string(ab.second);
    }
    return out;
}

WeightedPoly ek_as_QR(long k) {
    if (k < 4 || k % 2 != 0) throw Error("ek_as_QR: k must be even and >= 4");
    const auto monos = monomials_of_weight(k);
    const long M = static_cast<long>(monos.size());
    const long T = M + 1; // match coefficients of q^0 .. q^{M+1}

    QSeries Q = eisenstein_qexp(4, T);
    QSeries R = eisenstein_qexp(6, T);
    long amax = 0, bmax = 0;
    for (const auto& [a, b] : monos) {
        amax = std::max(amax, a);
        bmax = std::max(bmax, b);
    }
    std::vector<QSeries> Qp(amax + 1, QSeries::one(T)), Rp(bmax + 1, QSeries::one(T));
    for (long i = 1; i <= amax; ++i) Qp[i] = series_mul(Qp[i - 1], Q);
    for (long i = 1; i <= bmax; ++i) Rp[i] = series_mul(Rp[i - 1], R);

    std::vector<QSeries> mono_series;
    mono_series.reserve(monos.size());
    for (const auto& [a, b] : monos) mono_series.push_back(series_mul(Qp[a], Rp[b]));

    // Augmented system: rows index q-coefficients, columns index monomials.
    const long rows = M + 2;
    std::vector<std::vector<Rat>> mat(rows, std::vector<Rat>(M + 1));
    QSeries Ek = eisenstein_qexp(k, T);
    for (long r = 0; r < rows; ++r) {
        for (long m = 0; m < M; ++m) mat[r][m] = mono_series[m].coeff(r);
        mat[r][M] = Ek.coeff(r);
    }

    long rank = 0;
    std::vector<long> pivot_col(M, -1);
    for (long col = 0; col < M && rank < rows; ++col) {
        long piv = -1;
        for (long r = rank; r < rows; ++r)
            if (mat[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw SingularSystem("ek_as_QR: rank deficiency at weight " + std::to_string(k));
        std::swap(mat[rank], mat[piv]);
        Rat inv = Rat(1) / mat[rank][col];
        for (long c = col; c <= M; ++c) mat[rank][c] *= inv;
        for (long r = 0; r < rows; ++r) {
            if (r == rank || mat[r][col] == 0) continue;
            Rat f = mat[r][col];
            for (long c = col; c <= M; ++c) mat[r][c] -= f * mat[rank][c];
        }
        pivot_col[col] = rank;
        ++rank;
    }
    for (long r = rank; r < rows; ++r)
        if (mat[r][M] != 0)
            throw SingularSystem("ek_as_QR: inconsistent system at weight " + std::to_string(k));

    WeightedPoly out;
    out.k = k;
    for (long m = 0; m < M; ++m) {
        Rat c = mat[pivot_col[m]][M];
        if (c != 0) out.terms[monos[m]] = c;
    }
    return out;
}

Rat evaluate_weighted(const WeightedPoly& poly, const CurveModel& curve) {
    Rat q = curve.Q();
    Rat r = curve.R();
    Rat out(0);
    for (const auto& [ab, c] : poly.terms) out += c * rat_pow(q, ab.first) * rat_pow(r, ab.second);
    return out;
}

long point_count(const CurveModel& curve, long p) {
    if (p < 5) throw Error("point_count: p >= 5 required");
    const Int P(p);
    if (!curve.good_reduction(P))
        throw BadReduction("point_count: bad reduction at p = " + std::to_string(p));
    long A = reduce_mod(curve.short_A(), P, 1).get_si();
    long B = reduce_mod(curve.short_B(), P, 1).get_si();
    std::vector<char> issq(p, 0);
    for (long y = 0; y < p; ++y) issq[(y * y) % p] = 1;
    long count = 1; // point at infinity
    for (long x = 0; x < p; ++x) {
        long f = ((x * x % p) * x + A * x + B) % p;
        if (f == 0)
            ++count;
        else if (issq[f])
            count += 2;
    }
    return count;
}

SupersingularReport is_supersingular(const CurveModel& curve, long p) {
    if (p < 3) throw Error("is_supersingular: odd prime required");
    SupersingularReport rep;
    rep.p = p;
    const Int P(p);
    if (!curve.good_reduction(P))
        throw BadReduction("is_supersingular: bad reduction at p = " + std::to_string(p));
    if (p == 3) {
        // Good reduction of y^2 = 4x^3 - g2 x - g3 in characteristic 3 forces
        // j = 0, hence supersingularity; no second witness is available.
        rep.supersingular = true;
        return rep;
    }
    Rat E = evaluate_weighted(ek_as_QR(p - 1), curve);
    rep.hasse_residue = reduce_mod(E, P, 1);
    bool by_hasse = (rep.hasse_residue == 0);
    rep.count = point_count(curve, p);
    bool by_count = (rep.count == p + 1);
    if (by_hasse != by_count)
        throw WitnessDisagreement(
            "is_supersingular: p = " + std::to_string(p) + ", Hasse residue " +
            rep.hasse_residue.get_str() + " vs point count " + std::to_string(rep.count));
    rep.supersingular = by_hasse;
    rep.dual_checked = true;
    return rep;
}

MuCongruenceReport verify_mu_congruence(const CurveModel& curve, long p) {
    MuCongruenceReport rep;
    rep.p = p;
    const Int P(p);
    SupersingularReport ss = is_supersingular(curve, p);
    if (!ss.supersingular)
        throw Error("verify_mu_congruence: ordinary reduction at p = " + std::to_string(p));

    const long T = 2 * p * p + 6;
    FormalLog log = ec_formal_expansion(curve, T);
    DieudonneSolution sol = dieudonne_solve(log, p, T, 1);
    rep.mu_residue = sol.mu_p.residue_mod(1);

    if (p == 3) {
        rep.eisenstein_value = reduce_mod(curve.g2, P, 1);
        Rat e4 = evaluate_weighted(ek_as_QR(4), curve);
        rep.e_unit = (reduce_mod(e4, P, 1) == 0);
        rep.congruence = (rep.eisenstein_value != 0) && (rep.mu_residue == rep.eisenstein_value);
    } else {
        Rat E = evaluate_weighted(ek_as_QR(p + 1), curve);
        rep.eisenstein_value = reduce_mod(-E / 12, P, 1);
        rep.e_unit = (reduce_mod(E, P, 1) != 0);
        rep.congruence = (rep.mu_residue == rep.eisenstein_value);
    }
    rep.pass = rep.congruence && rep.e_unit;
    return rep;
}

namespace {

struct StrippedUnivariate {
    long e = 0; // stripped Q-exponent
    long f = 0; // stripped R-exponent
    std::vector<Int> u; // coefficients of u(s), s = Q^3 / R^2, u[0] != 0
};

StrippedUnivariate strip_univariate(const WeightedPoly& poly, const Int& P) {
    std::map<std::pair<long, long>, Int> red;
    for (const auto& [ab, c] : poly.terms) {
        Int r = reduce_mod(c, P, 1);
        if (r != 0) red[ab] = r;
    }
    if (red.empty()) throw Error("relative_primality_check: polynomial vanishes mod p");
    StrippedUnivariate out;
    out.e = red.begin()->first.first;
    out.f = red.begin()->first.second;
    for (const auto& [ab, c] : red) {
        out.e = std::min(out.e, ab.first);
        out.f = std::min(out.f, ab.second);
    }
    long n = 0;
    for (const auto& [ab, c] : red) n = std::max(n, (ab.first - out.e) / 3);
    out.u.assign(n + 1, Int(0));
    for (const auto& [ab, c] : red) {
        long aa = ab.first - out.e;
        long bb = ab.second - out.f;
        if (aa % 3 != 0 || bb % 2 != 0 || bb / 2 != n - aa / 3)
            throw Error("relative_primality_check: unexpected isobaric support");
        out.u[aa / 3] = c;
    }
    return out;
}

void poly_trim(std::vector<Int>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

std::vector<Int> poly_rem(std::vector<Int> a, const std::vector<Int>& b, const Int& P) {
    const Int lead_inv = inv_mod(b.back(), P);
    while (a.size() >= b.size()) {
        Int q = (a.back() * lead_inv) % P;
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] = ((a[off + i] - q * b[i]) % P + P) % P;
        poly_trim(a);
        if (a.empty()) break;
    }
    return a;
}

long poly_gcd_degree(std::vector<Int> a, std::vector<Int> b, const Int& P) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        std::vector<Int> r = poly_rem(std::move(a), b, P);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) throw Error("relative_primality_check: gcd of zero polynomials");
    return static_cast<long>(a.size()) - 1;
}

} // namespace

PrimalityReport relative_primality_check(long p) {
    if (p < 5) throw Error("relative_primality_check: p >= 5 required");
    PrimalityReport rep;
    rep.p = p;
    const Int P(p);
    StrippedUnivariate A = strip_univariate(ek_as_QR(p - 1), P);
    StrippedUnivariate B = strip_univariate(ek_as_QR(p + 1), P);
    rep.eA = A.e;
    rep.fA = A.f;
    rep.eB = B.e;
    rep.fB = B.f;
    rep.gcd_degree = poly_gcd_degree(A.u, B.u, P);
    rep.pass = rep.gcd_degree == 0 && rep.eA <= 1 && rep.fA <= 1 &&
               std::min(rep.eA, rep.eB) == 0 && std::min(rep.fA, rep.fB) == 0;
    return rep;
}

} // namespace padiclab
