#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padiclab/rational.hpp"

namespace padiclab {

// Exact Laurent series with a tracked truncation order: coefficients at
// exponents in [min_exp, trunc] are known exactly, everything above trunc is
// unknown (never implicitly zero), everything below min_exp is exactly zero.
// trunc == TRUNC_INF marks an exact polynomial.
class QSeries {
public:
    QSeries() : min_exp_(0), trunc_(TRUNC_INF), c_{} {}
    QSeries(long min_exp, long trunc, std::vector<Rat> coeffs);

    static QSeries zero(long trunc);
    static QSeries one(long trunc = TRUNC_INF);
    static QSeries monomial(const Rat& c, long e, long trunc = TRUNC_INF);

    long min_exp() const { return min_exp_; }
    long trunc() const { return trunc_; }
    // highest stored exponent; equals trunc for finite windows, top of the
    // support for polynomials (coefficients above are exact zeros)
    long stored_top() const { return min_exp_ + static_cast<long>(c_.size()) - 1; }

    // Known coefficient at exponent n; n > trunc is a contract violation.
    const Rat& coeff(long n) const;

    // Exponent of the first nonzero known coefficient; VAL_INF if the whole
    // known window is zero.
    long order() const;

    bool known_window_zero() const { return order() == VAL_INF; }
    bool integral() const; // all known denominators are 1

    QSeries truncated(long new_trunc) const;
    QSeries normalized() const; // trims leading stored zeros
    QSeries shifted(long k) const; // multiply by q^k

    std::string str(long max_terms = 12) const;

private:
    long min_exp_;
    long trunc_;
    std::vector<Rat> c_; // exponent min_exp_ + i; size trunc-min_exp+1 when finite
    friend QSeries series_mul(const QSeries&, const QSeries&);
};

QSeries operator+(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a, const QSeries& b);
QSeries operator-(const QSeries& a);
QSeries operator*(const Rat& c, const QSeries& a);

QSeries series_mul(const QSeries& a, const QSeries& b);

// (1/s) for a series with nonzero leading coefficient; sound truncation
// T - 2*ord(s).
QSeries series_inverse(const QSeries& s);

// s^n for n >= 0 (binary powering); n < 0 goes through series_inverse.
QSeries series_pow(const QSeries& s, long n);

// Compositional inverse r with r(s(q)) = q; Newton iteration on composition.
// Requires ord(s) = 1 with nonzero leading coefficient.
QSeries series_reversion(const QSeries& s);
QSeries series_reversion(const QSeries& s, long T);

// coefficient of q^n in output = coefficient of q^{pn} in input
QSeries u_operator(const QSeries& s, long p);
// exponents multiplied by p
QSeries v_operator(const QSeries& s, long p);
// q -> q^d substitution (same as v_operator, any d >= 1)
QSeries rescale(const QSeries& s, long d);

// sum a(n)/n q^n; requires zero constant term. D(formal_integral(s)) = s.
QSeries formal_integral(const QSeries& s);
// q d/dq
QSeries d_operator(const QSeries& s);

// outer(inner): outer is a Laurent expansion (finite pole order allowed),
// inner has order >= 1 with nonzero leading coefficient. The pole part goes
// through series_inverse; the tail is evaluated by a stride-aware Horner
// ladder (gcd of the outer support spacing).
QSeries compose_inner(const QSeries& outer, const QSeries& inner);

// exact coefficient agreement for all exponents <= upto (both known to upto)
bool agree_through(const QSeries& a, const QSeries& b, long upto);

// min over known coefficients of ord_p; returns (ord, exponent attaining it),
// or (VAL_INF, 0) for an all-zero window.
std::pair<long, long> min_ord_p(const QSeries& s, const Int& p);

// Portable text format: header "minexp trunc", then one "exponent num/den"
// line per nonzero coefficient.
std::string serialize(const QSeries& s);
QSeries parse_qseries(const std::string& text);

} // namespace padiclab
