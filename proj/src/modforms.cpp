#include "padiclab/modforms.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "padiclab/errors.hpp"

namespace padiclab {

namespace {

// Support of prod_n (1 - q^{dn}) - 1 below exponent L: signed pentagonal
// exponents d*k(3k-1)/2, d*k(3k+1)/2 with sign (-1)^k. Ascending.
struct SparseFactor {
    std::vector<std::pair<long, int>> terms;
};

SparseFactor pentagonal_support(long d, long L) {
    SparseFactor f;
    for (long k = 1;; ++k) {
        long e1 = d * (k * (3 * k - 1) / 2);
        long e2 = d * (k * (3 * k + 1) / 2);
        int s = (k % 2 == 0) ? 1 : -1;
        bool any = false;
        if (e1 < L) { f.terms.emplace_back(e1, s); any = true; }
        if (e2 < L) { f.terms.emplace_back(e2, s); any = true; }
        if (!any) break;
    }
    std::sort(f.terms.begin(), f.terms.end());
    return f;
}

// w *= (1 + factor), fresh buffer; O(L * |terms|).
void sparse_mul(std::vector<Int>& w, const SparseFactor& f) {
    const long L = static_cast<long>(w.size());
    std::vector<Int> out(w.begin(), w.end());
    for (const auto& [e, s] : f.terms) {
        for (long n = e; n < L; ++n) {
            if (s > 0) mpz_add(out[n].get_mpz_t(), out[n].get_mpz_t(), w[n - e].get_mpz_t());
            else mpz_sub(out[n].get_mpz_t(), out[n].get_mpz_t(), w[n - e].get_mpz_t());
        }
    }
    w.swap(out);
}

// w /= (1 + factor), in place: the quotient at n only needs quotient values
// below n, so one ascending pass suffices.
void sparse_div(std::vector<Int>& w, const SparseFactor& f) {
    const long L = static_cast<long>(w.size());
    for (long n = 1; n < L; ++n) {
        for (const auto& [e, s] : f.terms) {
            if (e > n) break;
            if (s > 0) mpz_sub(w[n].get_mpz_t(), w[n].get_mpz_t(), w[n - e].get_mpz_t());
            else mpz_add(w[n].get_mpz_t(), w[n].get_mpz_t(), w[n - e].get_mpz_t());
        }
    }
}

void validate_spec(const EtaQuotientSpec& spec) {
    std::vector<long> ds;
    for (const auto& [d, r] : spec.factors) {
        if (d <= 0) throw Error("eta quotient: multiplier must be positive");
        if (r == 0) throw Error("eta quotient: zero exponent factor");
        ds.push_back(d);
    }
    std::sort(ds.begin(), ds.end());
    if (std::adjacent_find(ds.begin(), ds.end()) != ds.end())
        throw Error("eta quotient: repeated multiplier");
}

long leading_exponent(const EtaQuotientSpec& spec) {
    long num = spec.leading_numerator();
    if (num % 24 != 0)
        throw FractionalLeadingExponent("eta quotient leading exponent " + std::to_string(num) +
                                        "/24 is not an integer");
    return num / 24;
}

void apply_factors(std::vector<Int>& w, const EtaQuotientSpec& spec) {
    const long L = static_cast<long>(w.size());
    for (const auto& [d, r] : spec.factors) {
        SparseFactor f = pentagonal_support(d, L);
        for (long j = 0; j < std::labs(r); ++j) {
            if (r > 0) sparse_mul(w, f);
            else sparse_div(w, f);
        }
    }
}

bool is_integer(const Rat& x) { return x.get_den() == 1; }

} // namespace

long EtaQuotientSpec::leading_numerator() const {
    long num = 0;
    for (const auto& [d, r] : factors) num += d * r;
    return num;
}

std::string EtaQuotientSpec::descriptor() const {
    std::ostringstream os;
    os << "eta";
    auto sorted = factors;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& [d, r] : sorted) os << "_" << d << "^" << r;
    return os.str();
}

QSeries eta_quotient_expand(const EtaQuotientSpec& spec, long T) {
    validate_spec(spec);
    long e0 = leading_exponent(spec);
    long L = T - e0 + 1;
    if (L <= 0) return QSeries(e0, T, {});
    std::vector<Int> w(static_cast<size_t>(L));
    w[0] = 1;
    apply_factors(w, spec);
    std::vector<Rat> c;
    c.reserve(w.size());
    for (auto& x : w) c.emplace_back(std::move(x));
    return QSeries(e0, T, std::move(c));
}

QSeries eta_quotient_mul(const QSeries& base, const EtaQuotientSpec& spec, long T) {
    validate_spec(spec);
    long e0 = leading_exponent(spec);
    long baseT = std::min(T, base.trunc());
    long L = baseT - base.min_exp() + 1;
    if (L <= 0) return QSeries(base.min_exp() + e0, baseT + e0, {});
    std::vector<Int> w(static_cast<size_t>(L));
    for (long i = 0; i < L; ++i) {
        const Rat& x = base.coeff(base.min_exp() + i);
        if (!is_integer(x)) throw Error("eta_quotient_mul: base must have integer coefficients");
        w[static_cast<size_t>(i)] = x.get_num();
    }
    apply_factors(w, spec);
    std::vector<Rat> c;
    c.reserve(w.size());
    for (auto& x : w) c.emplace_back(std::move(x));
    return QSeries(base.min_exp() + e0, baseT + e0, std::move(c));
}

Rat bernoulli(long n) {
    if (n < 0) throw Error("bernoulli: negative index");
    std::vector<Rat> B(static_cast<size_t>(n) + 1);
    B[0] = 1;
    for (long m = 1; m <= n; ++m) {
        Rat acc(0);
        for (long j = 0; j < m; ++j) {
            Int bc;
            mpz_bin_uiui(bc.get_mpz_t(), static_cast<unsigned long>(m + 1),
                         static_cast<unsigned long>(j));
            acc += Rat(bc) * B[static_cast<size_t>(j)];
        }
        B[static_cast<size_t>(m)] = -acc / Rat(m + 1);
    }
    return B[static_cast<size_t>(n)];
}

QSeries eisenstein_qexp(long k, long T) {
    if (k < 4 || k % 2 != 0) throw Error("eisenstein_qexp: weight must be even and >= 4");
    if (T < 0) throw Error("eisenstein_qexp: negative truncation");
    std::vector<Int> sig(static_cast<size_t>(T) + 1);
    for (long d = 1; d <= T; ++d) {
        Int dp = pow_int(Int(d), k - 1);
        for (long n = d; n <= T; n += d)
            mpz_add(sig[static_cast<size_t>(n)].get_mpz_t(),
                    sig[static_cast<size_t>(n)].get_mpz_t(), dp.get_mpz_t());
    }
    Rat coef = Rat(-2 * k) / bernoulli(k);
    std::vector<Rat> c(static_cast<size_t>(T) + 1);
    c[0] = 1;
    for (long n = 1; n <= T; ++n) c[static_cast<size_t>(n)] = coef * Rat(sig[static_cast<size_t>(n)]);
    return QSeries(0, T, std::move(c));
}

QSeries p_series(long T) {
    if (T < 0) throw Error("p_series: negative truncation");
    std::vector<Int> sig(static_cast<size_t>(T) + 1);
    for (long d = 1; d <= T; ++d)
        for (long n = d; n <= T; n += d)
            sig[static_cast<size_t>(n)] += d;
    std::vector<Rat> c(static_cast<size_t>(T) + 1);
    c[0] = Rat(1, 24);
    for (long n = 1; n <= T; ++n) c[static_cast<size_t>(n)] = -Rat(sig[static_cast<size_t>(n)]);
    return QSeries(0, T, std::move(c));
}

Eigenform::Eigenform(long level, std::vector<Int> coeffs) : level_(level), b_(std::move(coeffs)) {
    if (level_ <= 0) throw Error("Eigenform: level must be positive");
    if (b_.empty()) throw MissingNormalization("Eigenform: no coefficients");
}

const Int& Eigenform::at(long n) const {
    if (n < 1 || n > stored_terms()) throw Error("Eigenform::at: index out of range");
    return b_[static_cast<size_t>(n - 1)];
}

Int Eigenform::b_at(long n) const {
    if (n < 1) throw Error("Eigenform::b_at: index must be positive");
    if (n <= stored_terms()) return at(n);
    Int out(1);
    long rem = n;
    for (long p = 2; p * p <= rem; ++p) {
        if (rem % p != 0) continue;
        long a = 0;
        while (rem % p == 0) { rem /= p; ++a; }
        out *= prime_power_coeff(p, a);
    }
    if (rem > 1) out *= prime_power_coeff(rem, 1);
    return out;
}

Int Eigenform::prime_power_coeff(long p, long a) const {
    if (p > stored_terms())
        throw Error("Eigenform: prime " + std::to_string(p) + " exceeds stored range");
    const Int& bp = at(p);
    Int u0(1), u1(bp);
    if (a == 0) return u0;
    bool bad = (level_ % p == 0);
    for (long k = 2; k <= a; ++k) {
        Int u2 = bp * u1;
        if (!bad) u2 -= p * u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

QSeries Eigenform::series(long T) const {
    if (T < 1) return QSeries(1, T, {});
    std::vector<Rat> c(static_cast<size_t>(T));
    long direct = std::min(T, stored_terms());
    for (long n = 1; n <= direct; ++n) c[static_cast<size_t>(n - 1)] = Rat(at(n));
    for (long n = direct + 1; n <= T; ++n) c[static_cast<size_t>(n - 1)] = Rat(b_at(n));
    return QSeries(1, T, std::move(c));
}

void Eigenform::verify() const {
    const long T = stored_terms();
    if (b_[0] != 1)
        throw MissingNormalization("eigenform coefficients must start with b(1) = 1");
    for (long m = 2; m * m <= T; ++m) {
        for (long n = m + 1; m * n <= T; ++n) {
            if (std::gcd(m, n) != 1) continue;
            if (at(m * n) != at(m) * at(n))
                throw HeckeInconsistency("multiplicativity fails at (" + std::to_string(m) + "," +
                                         std::to_string(n) + ")");
        }
    }
    for (long p = 2; p * p <= T; ++p) {
        bool prime = true;
        for (long q = 2; q * q <= p; ++q)
            if (p % q == 0) { prime = false; break; }
        if (!prime) continue;
        bool bad = (level_ % p == 0);
        long pk = p; // p^k
        for (long k = 1; pk <= T / p; ++k, pk *= p) {
            Int expect = at(p) * at(pk);
            if (!bad && k >= 2) expect -= p * at(pk / p);
            else if (!bad && k == 1) expect -= Int(p); // b(p^0) = 1
            if (at(pk * p) != expect)
                throw HeckeInconsistency("prime power recursion fails at p=" + std::to_string(p) +
                                         " k=" + std::to_string(k + 1));
        }
        if (!bad && at(p) == 0) {
            Int want(1);
            for (long e = p * p; e <= T; e *= p * p) {
                want *= -p;
                if (at(e) != want)
                    throw HeckeInconsistency("b(p^2m) != (-p)^m at p=" + std::to_string(p));
                if (e > T / (p * p)) break;
            }
        }
    }
}

Eigenform load_eigenform(const std::string& path, long fallback_level) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open eigenform file " + path);
    long level = fallback_level;
    std::vector<Int> coeffs;
    std::string line;
    long expect = 1;
    bool first = true;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok)) continue;
        if (tok[0] == '#') continue;
        if (first && tok == "level") {
            if (!(ls >> level) || level <= 0) throw ParseError("bad level line in " + path);
            first = false;
            continue;
        }
        first = false;
        long n;
        try {
            n = std::stol(tok);
        } catch (const std::exception&) {
            throw ParseError("bad index '" + tok + "' in " + path);
        }
        std::string val;
        if (!(ls >> val)) throw ParseError("missing coefficient for n=" + std::to_string(n));
        if (n != expect) throw ParseError("eigenform indices must ascend without gaps from 1");
        try {
            coeffs.emplace_back(val);
        } catch (const std::exception&) {
            throw ParseError("bad coefficient '" + val + "' in " + path);
        }
        ++expect;
    }
    if (coeffs.empty()) throw ParseError("eigenform file " + path + " has no coefficients");
    if (coeffs[0] != 1) throw MissingNormalization("eigenform file must start with '1 1'");
    Eigenform f(level, std::move(coeffs));
    f.verify();
    return f;
}

Eigenform eigenform_from_series(const QSeries& s, long level) {
    if (s.order() != 1 || s.coeff(1) != 1)
        throw MissingNormalization("eigenform series must start with q");
    std::vector<Int> coeffs;
    coeffs.reserve(static_cast<size_t>(s.trunc()));
    for (long n = 1; n <= s.trunc(); ++n) {
        const Rat& x = s.coeff(n);
        if (!is_integer(x)) throw Error("eigenform series has a non-integer coefficient");
        coeffs.push_back(x.get_num());
    }
    Eigenform f(level, std::move(coeffs));
    f.verify();
    return f;
}

QSeries eichler_integral(const Eigenform& form, long T) {
    return formal_integral(form.series(T));
}

QSeries eichler_integral(const QSeries& weight_two, long T) {
    return formal_integral(weight_two.truncated(std::min(T, weight_two.trunc())));
}

Builtin32 builtin_32(long T) {
    if (T < 1) throw Error("builtin_32: truncation must be >= 1");
    Builtin32 out;
    out.g = eta_quotient_expand({{{4, 2}, {8, 2}}}, T);
    out.L = eta_quotient_expand({{{4, -2}, {8, 6}, {16, -4}}}, T);
    out.L2 = eta_quotient_expand({{{8, -2}, {16, 6}, {32, -4}}}, T);
    out.W1 = -eta_quotient_expand({{{4, 2}, {16, 6}, {32, -4}}}, T);
    QSeries e4 = rescale(eisenstein_qexp(4, T / 4 + 1), 4).truncated(T + 1);
    out.W2 = eta_quotient_mul(e4, {{{4, -2}, {8, -2}}}, T + 1);
    out.curve = curve_normalize(Rat(-16), Rat(0));
    out.form = std::make_shared<Eigenform>(eigenform_from_series(out.g, 32));
    return out;
}

} // namespace padiclab
