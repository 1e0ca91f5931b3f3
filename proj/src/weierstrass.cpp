#include "padiclab/weierstrass.hpp"

#include <fstream>
#include <sstream>

#include "padiclab/errors.hpp"
#include "padiclab/modforms.hpp"

namespace padiclab {

namespace {

Rat parse_rat(const std::string& tok) {
    try {
        Rat x(tok);
        x.canonicalize();
        return x;
    } catch (const std::exception&) {
        throw ParseError("bad rational '" + tok + "'");
    }
}

} // namespace

CurveModel curve_normalize(const Rat& g2, const Rat& g3) {
    CurveModel c{g2, g3};
    if (c.discriminant() == 0) throw SingularCurve("discriminant vanishes");
    return c;
}

CurveModel curve_normalize(const std::array<Rat, 5>& a) {
    const Rat &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
    Rat b2 = a1 * a1 + 4 * a2;
    Rat b4 = 2 * a4 + a1 * a3;
    Rat b6 = a3 * a3 + 4 * a6;
    Rat c4 = b2 * b2 - 24 * b4;
    Rat c6 = -b2 * b2 * b2 + 36 * b2 * b4 - 216 * b6;
    return curve_normalize(c4 / 12, c6 / 216);
}

CurveModel parse_curve_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open curve file " + path);
    std::optional<Rat> g2, g3;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key) || key[0] == '#') continue;
        auto where = [&] { return path + ":" + std::to_string(lineno); };
        if (key == "g2" || key == "g3") {
            std::string tok;
            if (!(ls >> tok)) throw ParseError("missing value at " + where());
            (key == "g2" ? g2 : g3) = parse_rat(tok);
        } else if (key == "ainv") {
            std::array<Rat, 5> a;
            for (auto& x : a) {
                std::string tok;
                if (!(ls >> tok)) throw ParseError("ainv needs 5 values at " + where());
                x = parse_rat(tok);
            }
            return curve_normalize(a);
        } else {
            throw ParseError("unknown key '" + key + "' at " + where());
        }
    }
    if (!g2 || !g3) throw ParseError("curve file " + path + " must set g2 and g3");
    return curve_normalize(*g2, *g3);
}

WpLaurent wp_coefficients(const CurveModel& curve, long K) {
    if (K < 2) throw Error("wp_coefficients: K must be >= 2");
    WpLaurent wp{curve, {}};
    wp.c.resize(static_cast<size_t>(K - 1));
    wp.c[0] = curve.g2 / 20;
    if (K >= 3) wp.c[1] = curve.g3 / 28;
    for (long k = 4; k <= K; ++k) {
        Rat acc(0);
        for (long j = 2; j <= k - 2; ++j)
            acc += wp.ck(j) * wp.ck(k - j);
        wp.c[static_cast<size_t>(k - 2)] = 3 * acc / Rat((2 * k + 1) * (k - 3));
    }
    return wp;
}

QSeries wp_z_series(const WpLaurent& wp) {
    long top = 2 * wp.K() - 2;
    std::vector<Rat> c(static_cast<size_t>(top + 3));
    c[0] = 1; // z^{-2}
    for (long k = 2; k <= wp.K(); ++k)
        c[static_cast<size_t>(2 * k - 2 + 2)] = wp.ck(k);
    return QSeries(-2, top, std::move(c));
}

QSeries zeta_z_series(const WpLaurent& wp) {
    long top = 2 * wp.K() - 1;
    std::vector<Rat> c(static_cast<size_t>(top + 2));
    c[0] = 1; // 1/z
    for (long k = 2; k <= wp.K(); ++k)
        c[static_cast<size_t>(2 * k - 1 + 1)] = -wp.ck(k) / Rat(2 * k - 1);
    return QSeries(-1, top, std::move(c));
}

LatticeEisenstein lattice_eisenstein(const CurveModel& curve, long two_k) {
    if (two_k < 4 || two_k % 2 != 0) throw Error("lattice_eisenstein: weight must be even >= 4");
    long k = two_k / 2;
    WpLaurent wp = wp_coefficients(curve, k);
    Int fact;
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(two_k - 2));
    LatticeEisenstein out;
    out.G = wp.ck(k) * Rat(fact) / 2;
    out.E = -Rat(4 * k) / bernoulli(two_k) * out.G;
    return out;
}

IdentityReport verify_wp_lift(long T) {
    IdentityReport rep;
    rep.name = "wp-lift";
    rep.terms = T;
    Builtin32 b32 = builtin_32(T + 2);
    QSeries E = eichler_integral(*b32.form, T + 2);
    long K = (T + 4) / 2 + 2;
    QSeries wp = wp_z_series(wp_coefficients(b32.curve, K));
    QSeries lhs = compose_inner(wp, E);
    QSeries diff = lhs - b32.L2;
    rep.pass = true;
    for (long n = diff.min_exp(); n <= std::min(T, diff.trunc()); ++n) {
        if (diff.coeff(n) != 0) {
            rep.pass = false;
            rep.first_mismatch = n;
            rep.detail = "mismatch at exponent " + std::to_string(n);
            break;
        }
    }
    if (rep.pass) rep.detail = "exact agreement through q^" + std::to_string(T);
    return rep;
}

TwentyZetaReport verify_20zeta_identity(long T) {
    TwentyZetaReport rep;
    rep.terms = T;
    Builtin32 b32 = builtin_32(T + 2);
    QSeries E = eichler_integral(*b32.form, T + 2);
    long K = (T + 4) / 2 + 2;
    QSeries zeta = zeta_z_series(wp_coefficients(b32.curve, K));
    QSeries lhs = 20 * compose_inner(zeta, E) + formal_integral(b32.W2);

    QSeries combo = 56 * rescale(p_series((T + 2) / 4 + 1), 4) -
                    32 * rescale(p_series((T + 2) / 8 + 1), 8) +
                    160 * rescale(p_series((T + 2) / 16 + 1), 16) -
                    640 * rescale(p_series((T + 2) / 32 + 1), 32);
    combo = combo.truncated(std::min(combo.trunc(), T + 2));
    QSeries rhs = series_mul(combo, series_inverse(b32.g));

    rep.rhs_times_3g_integral = (3 * combo).integral();

    long upto = std::min({T, lhs.trunc(), rhs.trunc()});
    bool plus = agree_through(lhs, rhs, upto);
    bool minus = agree_through(lhs, -rhs, upto);
    if (plus == minus) {
        rep.pass = false;
        rep.detail = plus ? "both signs match (degenerate input)" : "no sign matches";
        return rep;
    }
    rep.pass = true;
    rep.sigma = plus ? 1 : -1;
    rep.detail = "holds through q^" + std::to_string(upto) + " with sigma = " +
                 std::to_string(rep.sigma);
    return rep;
}

} // namespace padiclab
