#pragma once

#include <vector>

#include "padiclab/rational.hpp"

namespace padiclab {

// p^valuation * unit with the unit known to `precision` significant p-digits
// (relative precision). The exact zero is a separate marker with valuation
// VAL_INF. precision = 0 means "value exhibited, no digits certified".
struct PAdicApprox {
    Int p;
    bool zero = false;
    long valuation = 0;
    Int unit = 0; // in [1, p^max(precision,1)), coprime to p, unless zero
    long precision = 0;

    static PAdicApprox exact_zero(const Int& p);
    static PAdicApprox from_rational(const Rat& x, const Int& p, long precision);
    // From a residue r mod p^k: r = 0 encodes "valuation >= k" with no
    // certified unit digits.
    static PAdicApprox from_residue(const Int& r, const Int& p, long k);

    bool is_unit() const { return !zero && valuation == 0; }

    // Residue of the value mod p^k; requires valuation >= 0 and
    // k - valuation <= precision (else PrecisionExhausted).
    Int residue_mod(long k) const;

    PAdicApprox operator-() const;
    PAdicApprox operator*(const PAdicApprox& o) const;
    PAdicApprox operator+(const PAdicApprox& o) const;
    PAdicApprox operator-(const PAdicApprox& o) const;

    // Same value mod p^k (absolute precision k); both must certify k digits.
    bool congruent_mod(const PAdicApprox& o, long k) const;

    std::string str() const;
};

struct LimitEstimate {
    PAdicApprox value;          // last term of the sequence
    std::vector<long> profile;  // ord_p(x_{k+1} - x_k); VAL_INF for exact ties
    bool cauchy = true;
};

// Agreement profile of consecutive differences plus the last term as a
// PAdicApprox at precision min(cap, final agreement). Never throws; the
// cauchy flag reports whether the profile weakly increases and ends > 0.
LimitEstimate try_padic_limit_estimate(const std::vector<Rat>& seq, const Int& p, long cap);

/// Throwing wrapper: NonCauchy when the profile fails the monotone-growth rule.
LimitEstimate padic_limit_estimate(const std::vector<Rat>& seq, const Int& p, long cap);

} // namespace padiclab
