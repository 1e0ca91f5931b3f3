#include "padiclab/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace padiclab {

namespace {

const Rat kZero = 0;

long sat_add(long a, long b) {
    if (a >= TRUNC_INF || b >= TRUNC_INF) return TRUNC_INF;
    long s = a + b;
    return s >= TRUNC_INF ? TRUNC_INF : s;
}

// window top to materialize for elementwise ops
long out_top(long trunc, long fallback_top) {
    return trunc == TRUNC_INF ? fallback_top : trunc;
}

} // namespace

QSeries::QSeries(long min_exp, long trunc, std::vector<Rat> coeffs)
    : min_exp_(min_exp), trunc_(trunc), c_(std::move(coeffs)) {
    if (trunc_ < min_exp_ - 1) throw Error("QSeries: truncation below min exponent");
    if (trunc_ != TRUNC_INF) {
        size_t want = static_cast<size_t>(trunc_ - min_exp_ + 1);
        if (c_.size() > want) throw Error("QSeries: too many coefficients for window");
        c_.resize(want, Rat(0));
    }
}

QSeries QSeries::zero(long trunc) { return QSeries(0, trunc, {}); }

QSeries QSeries::one(long trunc) { return monomial(Rat(1), 0, trunc); }

QSeries QSeries::monomial(const Rat& c, long e, long trunc) {
    if (trunc != TRUNC_INF && trunc < e) throw Error("QSeries::monomial: exponent above truncation");
    std::vector<Rat> v{c};
    QSeries s(e, trunc, std::move(v));
    return s;
}

const Rat& QSeries::coeff(long n) const {
    if (n > trunc_) throw Error("QSeries::coeff: exponent beyond truncation");
    if (n < min_exp_) return kZero;
    size_t i = static_cast<size_t>(n - min_exp_);
    if (i >= c_.size()) return kZero; // polynomial tail
    return c_[i];
}

long QSeries::order() const {
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) return min_exp_ + static_cast<long>(i);
    return VAL_INF;
}

bool QSeries::integral() const {
    for (const Rat& x : c_)
        if (x.get_den() != 1) return false;
    return true;
}

QSeries QSeries::truncated(long new_trunc) const {
    if (new_trunc >= trunc_) return *this;
    if (new_trunc < min_exp_ - 1) throw Error("QSeries::truncated: window collapses");
    std::vector<Rat> v;
    long n = new_trunc - min_exp_ + 1;
    v.reserve(static_cast<size_t>(std::max(n, 0L)));
    for (long i = 0; i < n; ++i)
        v.push_back(i < static_cast<long>(c_.size()) ? c_[static_cast<size_t>(i)] : Rat(0));
    return QSeries(min_exp_, new_trunc, std::move(v));
}

QSeries QSeries::normalized() const {
    long o = order();
    if (o == VAL_INF) {
        long base = trunc_ == TRUNC_INF ? min_exp_ : trunc_;
        return QSeries(base, trunc_, {});
    }
    if (o == min_exp_) return *this;
    std::vector<Rat> v(c_.begin() + (o - min_exp_), c_.end());
    return QSeries(o, trunc_, std::move(v));
}

QSeries QSeries::shifted(long k) const {
    return QSeries(min_exp_ + k, sat_add(trunc_, k), c_);
}

std::string QSeries::str(long max_terms) const {
    std::ostringstream os;
    long shown = 0;
    bool first = true;
    for (size_t i = 0; i < c_.size() && shown < max_terms; ++i) {
        if (c_[i] == 0) continue;
        long e = min_exp_ + static_cast<long>(i);
        if (!first) os << " + ";
        os << to_string(c_[i]) << "*q^" << e;
        first = false;
        ++shown;
    }
    if (first) os << "0";
    if (trunc_ != TRUNC_INF) os << " + O(q^" << trunc_ + 1 << ")";
    return os.str();
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    long m = std::min(a.min_exp(), b.min_exp());
    long t = std::min(a.trunc(), b.trunc());
    long hi = out_top(t, std::max(a.stored_top(), b.stored_top()));
    std::vector<Rat> v;
    v.reserve(static_cast<size_t>(std::max(hi - m + 1, 0L)));
    for (long n = m; n <= hi; ++n) v.push_back(a.coeff(n) + b.coeff(n));
    return QSeries(m, t, std::move(v));
}

QSeries operator-(const QSeries& a) {
    std::vector<Rat> v;
    long hi = out_top(a.trunc(), a.stored_top());
    v.reserve(static_cast<size_t>(std::max(hi - a.min_exp() + 1, 0L)));
    for (long n = a.min_exp(); n <= hi; ++n) v.push_back(-a.coeff(n));
    return QSeries(a.min_exp(), a.trunc(), std::move(v));
}

QSeries operator-(const QSeries& a, const QSeries& b) { return a + (-b); }

QSeries operator*(const Rat& c, const QSeries& a) {
    std::vector<Rat> v;
    long hi = out_top(a.trunc(), a.stored_top());
    v.reserve(static_cast<size_t>(std::max(hi - a.min_exp() + 1, 0L)));
    for (long n = a.min_exp(); n <= hi; ++n) v.push_back(c * a.coeff(n));
    return QSeries(a.min_exp(), a.trunc(), std::move(v));
}

QSeries series_mul(const QSeries& a, const QSeries& b) {
    long m = a.min_exp() + b.min_exp();
    // coefficient at n is sound iff every contributing pair lies in known
    // windows: n <= min(Ta + mb, Tb + ma)
    long t = std::min(sat_add(a.trunc(), b.min_exp()), sat_add(b.trunc(), a.min_exp()));
    long hi = out_top(t, a.stored_top() + b.stored_top());
    if (hi < m) return QSeries(m, t, {});
    std::vector<Rat> v(static_cast<size_t>(hi - m + 1), Rat(0));
    bool ints = a.integral() && b.integral();
    long atop = std::min(a.stored_top(), out_top(a.trunc(), a.stored_top()));
    long btop = std::min(b.stored_top(), out_top(b.trunc(), b.stored_top()));
    if (ints) {
        std::vector<Int> acc(v.size(), Int(0));
        for (long i = a.min_exp(); i <= atop; ++i) {
            const Rat& ai = a.coeff(i);
            if (ai == 0) continue;
            const Int& az = ai.get_num();
            long jmax = std::min(btop, hi - i);
            for (long j = b.min_exp(); j <= jmax; ++j) {
                const Rat& bj = b.coeff(j);
                if (bj == 0) continue;
                mpz_addmul(acc[static_cast<size_t>(i + j - m)].get_mpz_t(), az.get_mpz_t(),
                           bj.get_num().get_mpz_t());
            }
        }
        for (size_t k = 0; k < v.size(); ++k) v[k] = Rat(std::move(acc[k]));
    } else {
        Rat tmp;
        for (long i = a.min_exp(); i <= atop; ++i) {
            const Rat& ai = a.coeff(i);
            if (ai == 0) continue;
            long jmax = std::min(btop, hi - i);
            for (long j = b.min_exp(); j <= jmax; ++j) {
                const Rat& bj = b.coeff(j);
                if (bj == 0) continue;
                tmp = ai * bj;
                v[static_cast<size_t>(i + j - m)] += tmp;
            }
        }
    }
    return QSeries(m, t, std::move(v));
}

QSeries series_inverse(const QSeries& s) {
    long o = s.order();
    if (o == VAL_INF) throw NonUnitLeadingTerm("cannot invert a zero window");
    QSeries sn = s.normalized();
    long T = sn.trunc();
    long len = T == TRUNC_INF ? (sn.stored_top() - o + 1) : (T - o + 1);
    // 1/s has min exponent -o and the same number of known coefficients
    const Rat& lead = sn.coeff(o);
    std::vector<Rat> inv(static_cast<size_t>(len), Rat(0));
    inv[0] = 1 / lead;
    Rat tmp;
    for (long n = 1; n < len; ++n) {
        Rat acc = 0;
        long kmax = std::min(n, sn.stored_top() - o);
        for (long k = 1; k <= kmax; ++k) {
            const Rat& sk = sn.coeff(o + k);
            if (sk == 0) continue;
            tmp = sk * inv[static_cast<size_t>(n - k)];
            acc += tmp;
        }
        inv[static_cast<size_t>(n)] = -acc / lead;
    }
    long out_trunc = T == TRUNC_INF ? TRUNC_INF : T - 2 * o;
    return QSeries(-o, out_trunc, std::move(inv));
}

QSeries series_pow(const QSeries& s, long n) {
    if (n < 0) return series_pow(series_inverse(s), -n);
    if (n == 0) return QSeries::one(s.trunc() == TRUNC_INF ? TRUNC_INF : TRUNC_INF);
    QSeries base = s;
    QSeries result = QSeries::one();
    bool have = false;
    long e = n;
    while (e > 0) {
        if (e & 1) {
            result = have ? series_mul(result, base) : base;
            have = true;
        }
        e >>= 1;
        if (e > 0) base = series_mul(base, base);
    }
    return result;
}

QSeries u_operator(const QSeries& s, long p) {
    if (p <= 0) throw Error("u_operator: p must be positive");
    long m = s.min_exp() >= 0 ? (s.min_exp() + p - 1) / p : -((-s.min_exp()) / p);
    long t;
    if (s.trunc() == TRUNC_INF)
        t = TRUNC_INF;
    else
        t = s.trunc() >= 0 ? s.trunc() / p : -((-s.trunc() + p - 1) / p);
    long hi = out_top(t, s.stored_top() >= 0 ? s.stored_top() / p : 0);
    std::vector<Rat> v;
    v.reserve(static_cast<size_t>(std::max(hi - m + 1, 0L)));
    for (long n = m; n <= hi; ++n) v.push_back(s.coeff(p * n));
    return QSeries(m, t, std::move(v));
}

QSeries v_operator(const QSeries& s, long p) { return rescale(s, p); }

QSeries rescale(const QSeries& s, long d) {
    if (d <= 0) throw Error("rescale: multiplier must be positive");
    if (d == 1) return s;
    long m = s.min_exp() * d;
    long t = s.trunc() == TRUNC_INF ? TRUNC_INF : s.trunc() * d;
    long hi = out_top(t, s.stored_top() * d);
    std::vector<Rat> v(static_cast<size_t>(std::max(hi - m + 1, 0L)), Rat(0));
    for (long n = s.min_exp(); n <= s.stored_top(); ++n) {
        if (n * d > hi) break;
        v[static_cast<size_t>(n * d - m)] = s.coeff(n);
    }
    return QSeries(m, t, std::move(v));
}

QSeries formal_integral(const QSeries& s) {
    if (s.min_exp() <= 0 && 0 <= s.trunc() && s.coeff(0) != 0)
        throw NonzeroConstantTerm("formal_integral: constant term " + to_string(s.coeff(0)));
    long hi = out_top(s.trunc(), s.stored_top());
    std::vector<Rat> v;
    v.reserve(static_cast<size_t>(std::max(hi - s.min_exp() + 1, 0L)));
    for (long n = s.min_exp(); n <= hi; ++n) {
        if (n == 0)
            v.push_back(Rat(0));
        else
            v.push_back(s.coeff(n) / Rat(n));
    }
    return QSeries(s.min_exp(), s.trunc(), std::move(v));
}

QSeries d_operator(const QSeries& s) {
    long hi = out_top(s.trunc(), s.stored_top());
    std::vector<Rat> v;
    v.reserve(static_cast<size_t>(std::max(hi - s.min_exp() + 1, 0L)));
    for (long n = s.min_exp(); n <= hi; ++n) v.push_back(Rat(n) * s.coeff(n));
    return QSeries(s.min_exp(), s.trunc(), std::move(v));
}

QSeries compose_inner(const QSeries& outer, const QSeries& inner) {
    long o = inner.order();
    if (o == VAL_INF || o < 1 || inner.min_exp() < 1)
        throw NonUnitLeadingTerm("compose_inner: inner series must have positive order");
    QSeries in = inner.normalized();

    // split outer support
    long lo = outer.min_exp();
    long otop = out_top(outer.trunc(), outer.stored_top());
    std::vector<long> tail_support;
    for (long e = std::max(lo, 0L); e <= otop; ++e)
        if (outer.coeff(e) != 0) tail_support.push_back(e);

    long inner_T = in.trunc();
    QSeries result = QSeries::zero(inner_T == TRUNC_INF ? TRUNC_INF : inner_T);
    bool have = false;

    auto add_to = [&](const QSeries& piece) {
        result = have ? result + piece : piece;
        have = true;
    };

    // pole part via powers of 1/inner
    if (lo < 0) {
        QSeries inv = series_inverse(in);
        QSeries ipow = inv;
        for (long j = 1; j <= -lo; ++j) {
            const Rat& c = outer.coeff(-j);
            if (c != 0) add_to(c * ipow);
            if (j < -lo) ipow = series_mul(ipow, inv);
        }
    }

    // tail via stride-aware Horner from the top exponent down
    if (!tail_support.empty()) {
        long e0 = tail_support.front();
        long g = 0;
        for (long e : tail_support) g = std::gcd(g, e - e0);
        if (g == 0) {
            // single monomial c * inner^{e0}
            QSeries piece = e0 == 0 ? QSeries(0, TRUNC_INF, {outer.coeff(e0)})
                                    : outer.coeff(e0) * series_pow(in, e0);
            add_to(piece);
        } else {
            QSeries P = series_pow(in, g);
            long etop = tail_support.back();
            QSeries acc = QSeries(0, TRUNC_INF, {outer.coeff(etop)});
            for (long e = etop - g; e >= e0; e -= g) {
                acc = series_mul(acc, P);
                const Rat& c = outer.coeff(e);
                if (c != 0) acc = acc + QSeries(0, TRUNC_INF, {c});
            }
            if (e0 > 0) acc = series_mul(acc, series_pow(in, e0));
            add_to(acc);
        }
    }

    if (!have) result = QSeries::zero(inner_T == TRUNC_INF ? TRUNC_INF : inner_T);

    // unknown outer coefficients above otop start contributing at q-exponent
    // (otop+1)*o when the outer window is finite
    if (outer.trunc() != TRUNC_INF) {
        long bound = sat_add(sat_add(outer.trunc(), 1) == TRUNC_INF ? TRUNC_INF : (outer.trunc() + 1) * o,
                             -1);
        if (bound < result.trunc()) result = result.truncated(bound);
    }
    return result;
}

QSeries series_reversion(const QSeries& s) {
    long T = s.trunc();
    if (T == TRUNC_INF) T = s.stored_top();
    return series_reversion(s, T);
}

QSeries series_reversion(const QSeries& s, long T) {
    if (s.order() != 1 || s.min_exp() < 0)
        throw NonUnitLeadingTerm("series_reversion: input must start c1*q, c1 != 0");
    const Rat& c1 = s.coeff(1);
    if (c1 == 0) throw NonUnitLeadingTerm("series_reversion: zero linear coefficient");
    if (s.trunc() < T) throw Error("series_reversion: input truncation below requested order");
    QSeries sT = s.truncated(T).normalized();
    QSeries sprime = d_operator(sT); // q d/dq; matches s' up to the variable factor
    // Work with the true derivative ds/dq = (1/q) * D(s)
    QSeries ds = sprime.shifted(-1);

    // Newton: r <- r - (s(r) - id)/(s'(r)), doubling the working order
    QSeries r = QSeries::monomial(1 / c1, 1, 1);
    long prec = 1;
    while (prec < T) {
        long next = std::min(2 * prec, T);
        QSeries rw(r.min_exp(), next, {});
        {
            // widen r's window: coefficients (prec, next] provisionally 0
            std::vector<Rat> v;
            v.reserve(static_cast<size_t>(next));
            for (long n = 1; n <= next; ++n) v.push_back(n <= r.trunc() ? r.coeff(n) : Rat(0));
            rw = QSeries(1, next, std::move(v));
        }
        QSeries err = compose_inner(sT, rw) - QSeries::monomial(Rat(1), 1, TRUNC_INF);
        err = err.truncated(next);
        QSeries denom = compose_inner(ds, rw).truncated(next - 1);
        QSeries corr = series_mul(err, series_inverse(denom));
        QSeries delta = corr.truncated(next);
        // r_new = rw - delta
        std::vector<Rat> v;
        v.reserve(static_cast<size_t>(next));
        for (long n = 1; n <= next; ++n) v.push_back(rw.coeff(n) - (n <= delta.trunc() ? delta.coeff(n) : Rat(0)));
        r = QSeries(1, next, std::move(v));
        prec = next;
    }
    return r;
}

bool agree_through(const QSeries& a, const QSeries& b, long upto) {
    if (a.trunc() < upto || b.trunc() < upto)
        throw Error("agree_through: window not known that far");
    long lo = std::min(a.min_exp(), b.min_exp());
    for (long n = lo; n <= upto; ++n)
        if (a.coeff(n) != b.coeff(n)) return false;
    return true;
}

std::pair<long, long> min_ord_p(const QSeries& s, const Int& p) {
    long best = VAL_INF, at = 0;
    long hi = out_top(s.trunc(), s.stored_top());
    for (long n = s.min_exp(); n <= hi; ++n) {
        long v = valuation(s.coeff(n), p);
        if (v < best) {
            best = v;
            at = n;
        }
    }
    return {best, at};
}

std::string serialize(const QSeries& s) {
    std::ostringstream os;
    os << s.min_exp() << " ";
    if (s.trunc() == TRUNC_INF)
        os << "inf";
    else
        os << s.trunc();
    os << "\n";
    long hi = out_top(s.trunc(), s.stored_top());
    for (long n = s.min_exp(); n <= hi; ++n) {
        const Rat& c = s.coeff(n);
        if (c == 0) continue;
        os << n << " " << c.get_num().get_str() << "/" << c.get_den().get_str() << "\n";
    }
    return os.str();
}

QSeries parse_qseries(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw ParseError("empty series text");
    std::istringstream head(line);
    long min_exp;
    std::string trunc_tok;
    if (!(head >> min_exp >> trunc_tok)) throw ParseError("bad series header: " + line);
    long trunc;
    if (trunc_tok == "inf") {
        trunc = TRUNC_INF;
    } else {
        try {
            trunc = std::stol(trunc_tok);
        } catch (const std::exception&) {
            throw ParseError("bad truncation token: " + trunc_tok);
        }
    }
    std::vector<std::pair<long, Rat>> entries;
    long top = min_exp - 1;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        long e;
        std::string frac;
        if (!(ls >> e >> frac)) throw ParseError("bad series line: " + line);
        Rat c;
        try {
            c = Rat(frac);
        } catch (const std::exception&) {
            throw ParseError("bad coefficient: " + frac);
        }
        if (c.get_den() == 0) throw ParseError("zero denominator: " + frac);
        c.canonicalize();
        entries.emplace_back(e, c);
        top = std::max(top, e);
    }
    long hi = trunc == TRUNC_INF ? top : trunc;
    std::vector<Rat> v(static_cast<size_t>(std::max(hi - min_exp + 1, 0L)), Rat(0));
    for (auto& [e, c] : entries) {
        if (e < min_exp || e > hi) throw ParseError("series entry out of window");
        v[static_cast<size_t>(e - min_exp)] = c;
    }
    return QSeries(min_exp, trunc, std::move(v));
}

} // namespace padiclab
