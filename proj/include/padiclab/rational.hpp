#pragma once

#include <gmpxx.h>

#include <limits>
#include <string>

#include "padiclab/errors.hpp"

namespace padiclab {

using Int = mpz_class;
using Rat = mpq_class;

// Valuation of the exact zero; large sentinel, never produced by finite values.
inline constexpr long VAL_INF = std::numeric_limits<long>::max() / 4;

// Truncation order of exact (polynomial) series; min()-arithmetic safe.
inline constexpr long TRUNC_INF = std::numeric_limits<long>::max() / 4;

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

// ord_p of a nonzero integer; VAL_INF for 0.
long valuation_int(const Int& n, const Int& p);

// ord_p of a rational; VAL_INF iff x = 0.
long valuation(const Rat& x, const Int& p);

// Euler criterion; 0 iff p | a. Rejects p = 2 and non-odd-prime moduli.
int legendre_symbol(const Int& a, const Int& p);

// x mod p^N for a rational with ord_p(x) >= 0, as the canonical residue in [0, p^N).
// Throws ArgumentNotPAdicInteger when p divides the denominator.
Int reduce_mod(const Rat& x, const Int& p, long N);

// Inverse of a mod m (m > 1, gcd(a, m) = 1).
Int inv_mod(const Int& a, const Int& m);

std::string to_string(const Rat& x);

} // namespace padiclab
