#include "padiclab/padic.hpp"

#include <sstream>

namespace padiclab {

PAdicApprox PAdicApprox::exact_zero(const Int& p) {
    PAdicApprox z;
    z.p = p;
    z.zero = true;
    z.valuation = VAL_INF;
    z.precision = VAL_INF;
    return z;
}

PAdicApprox PAdicApprox::from_rational(const Rat& x, const Int& p, long precision) {
    if (precision < 0) precision = 0;
    if (x == 0) {
        PAdicApprox z = exact_zero(p);
        z.precision = precision;
        return z;
    }
    PAdicApprox a;
    a.p = p;
    a.valuation = padiclab::valuation(x, p);
    a.precision = precision;
    // unit part = x / p^v, reduced mod p^max(precision,1)
    Rat unit_rat = x;
    if (a.valuation > 0)
        unit_rat /= Rat(pow_int(p, static_cast<unsigned long>(a.valuation)));
    else if (a.valuation < 0)
        unit_rat *= Rat(pow_int(p, static_cast<unsigned long>(-a.valuation)));
    unit_rat.canonicalize();
    a.unit = reduce_mod(unit_rat, p, std::max(precision, 1L));
    return a;
}

PAdicApprox PAdicApprox::from_residue(const Int& r, const Int& p, long k) {
    if (k < 1) throw Error("from_residue: modulus exponent must be >= 1");
    Int m = pow_int(p, static_cast<unsigned long>(k));
    Int rr = r % m;
    if (rr < 0) rr += m;
    PAdicApprox a;
    a.p = p;
    if (rr == 0) {
        // only a lower bound on the valuation is known
        a.valuation = k;
        a.unit = 1;
        a.precision = 0;
        return a;
    }
    a.valuation = valuation_int(rr, p);
    a.precision = k - a.valuation;
    Int mm = pow_int(p, static_cast<unsigned long>(a.precision));
    Int u;
    mpz_divexact(u.get_mpz_t(), rr.get_mpz_t(), pow_int(p, static_cast<unsigned long>(a.valuation)).get_mpz_t());
    a.unit = u % mm;
    return a;
}

Int PAdicApprox::residue_mod(long k) const {
    if (k <= 0) throw Error("residue_mod: k must be positive");
    if (zero) return 0;
    if (valuation < 0) throw PrecisionExhausted("negative valuation has no residue mod p^k");
    if (valuation >= k) return 0;
    if (k - valuation > precision)
        throw PrecisionExhausted("requested " + std::to_string(k) + " absolute digits, certified " +
                                 std::to_string(valuation + precision));
    Int m = pow_int(p, static_cast<unsigned long>(k));
    Int r = unit % pow_int(p, static_cast<unsigned long>(k - valuation));
    r *= pow_int(p, static_cast<unsigned long>(valuation));
    r %= m;
    if (r < 0) r += m;
    return r;
}

PAdicApprox PAdicApprox::operator-() const {
    if (zero) return *this;
    PAdicApprox r = *this;
    Int m = pow_int(p, static_cast<unsigned long>(std::max(precision, 1L)));
    r.unit = (m - unit % m) % m;
    if (r.unit == 0) r.unit = m; // cannot happen for a true unit; defensive
    return r;
}

PAdicApprox PAdicApprox::operator*(const PAdicApprox& o) const {
    if (zero) {
        PAdicApprox z = *this;
        z.precision = std::min(precision, o.precision);
        return z;
    }
    if (o.zero) {
        PAdicApprox z = o;
        z.precision = std::min(precision, o.precision);
        return z;
    }
    PAdicApprox r;
    r.p = p;
    r.valuation = valuation + o.valuation;
    r.precision = std::min(precision, o.precision);
    Int m = pow_int(p, static_cast<unsigned long>(std::max(r.precision, 1L)));
    r.unit = unit * o.unit % m;
    return r;
}

PAdicApprox PAdicApprox::operator+(const PAdicApprox& o) const {
    if (zero) return o;
    if (o.zero) return *this;
    // absolute precision of the sum
    long abs_prec = std::min(valuation + precision, o.valuation + o.precision);
    long vmin = std::min(valuation, o.valuation);
    if (abs_prec <= vmin)
        throw PrecisionExhausted("sum has no certified digits");
    Int m = pow_int(p, static_cast<unsigned long>(abs_prec - vmin));
    Int a = unit * pow_int(p, static_cast<unsigned long>(valuation - vmin)) % m;
    Int b = o.unit * pow_int(p, static_cast<unsigned long>(o.valuation - vmin)) % m;
    Int s = (a + b) % m;
    if (s < 0) s += m;
    PAdicApprox r;
    r.p = p;
    if (s == 0) {
        // cancellation to the working modulus: an approximate zero
        r.zero = false;
        r.valuation = abs_prec;
        r.precision = 0;
        r.unit = 1;
        return r;
    }
    long v = valuation_int(s, p);
    r.valuation = vmin + v;
    r.precision = abs_prec - r.valuation;
    Int mm = pow_int(p, static_cast<unsigned long>(std::max(r.precision, 1L)));
    r.unit = s / pow_int(p, static_cast<unsigned long>(v)) % mm;
    return r;
}

PAdicApprox PAdicApprox::operator-(const PAdicApprox& o) const { return *this + (-o); }

bool PAdicApprox::congruent_mod(const PAdicApprox& o, long k) const {
    if (zero && o.zero) return true;
    auto res = [&](const PAdicApprox& a) -> Int {
        if (a.zero) return 0;
        return a.residue_mod(k);
    };
    // values with valuation >= k reduce to 0
    auto soft = [&](const PAdicApprox& a) -> Int {
        if (!a.zero && a.valuation >= k) return 0;
        return res(a);
    };
    return soft(*this) == soft(o);
}

std::string PAdicApprox::str() const {
    std::ostringstream os;
    if (zero) {
        os << "0 (exact, p=" << p.get_str() << ")";
        return os.str();
    }
    os << p.get_str() << "^" << valuation << " * (" << unit.get_str() << " + O(" << p.get_str()
       << "^" << precision << "))";
    return os.str();
}

LimitEstimate try_padic_limit_estimate(const std::vector<Rat>& seq, const Int& p, long cap) {
    if (seq.empty()) throw Error("padic_limit_estimate: empty sequence");
    LimitEstimate est;
    est.profile.reserve(seq.size() - 1);
    for (size_t k = 0; k + 1 < seq.size(); ++k)
        est.profile.push_back(valuation(seq[k + 1] - seq[k], p));
    est.cauchy = true;
    for (size_t k = 0; k + 1 < est.profile.size(); ++k)
        if (est.profile[k + 1] < est.profile[k]) est.cauchy = false;
    // a tail that stopped gaining digits (final agreement <= 0) is not Cauchy evidence
    if (!est.profile.empty() && est.profile.back() != VAL_INF && est.profile.back() <= 0)
        est.cauchy = false;
    long prec = 0;
    if (!est.profile.empty()) {
        long last = est.profile.back();
        prec = last == VAL_INF ? cap : std::min(cap, std::max(last, 0L));
    }
    if (!est.cauchy) prec = 0;
    est.value = PAdicApprox::from_rational(seq.back(), p, prec);
    return est;
}

LimitEstimate padic_limit_estimate(const std::vector<Rat>& seq, const Int& p, long cap) {
    LimitEstimate est = try_padic_limit_estimate(seq, p, cap);
    if (!est.cauchy) {
        std::ostringstream os;
        os << "agreement profile not weakly increasing to positive depth:";
        for (long v : est.profile) {
            if (v == VAL_INF)
                os << " inf";
            else
                os << " " << v;
        }
        throw NonCauchy(os.str());
    }
    return est;
}

} // namespace padiclab
