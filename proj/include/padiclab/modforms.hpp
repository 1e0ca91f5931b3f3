#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "padiclab/qseries.hpp"
#include "padiclab/rational.hpp"
#include "padiclab/weierstrass.hpp"

namespace padiclab {

// Product of eta(d*tau)^{r_d}; factors carry distinct positive multipliers d.
struct EtaQuotientSpec {
    std::vector<std::pair<long, long>> factors; // (d, r_d), r_d != 0

    long leading_numerator() const; // sum d*r_d, must be divisible by 24
    std::string descriptor() const; // stable key for caching
};

// q-expansion through q^T. Leading exponent sum(d*r_d)/24 must be an integer
// (FractionalLeadingExponent otherwise). All coefficients are integers.
QSeries eta_quotient_expand(const EtaQuotientSpec& spec, long T);

// base * (eta quotient), applying each Euler-product factor sparsely.
// Same cost profile as eta_quotient_expand; base must have integer
// coefficients when divisions occur (they do: eta factors are unimodular).
QSeries eta_quotient_mul(const QSeries& base, const EtaQuotientSpec& spec, long T);

// B_0 = 1, B_1 = -1/2, B_2 = 1/6 (zeta(-1) = -1/12 convention).
Rat bernoulli(long n);

// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n, k >= 4 even.
QSeries eisenstein_qexp(long k, long T);

// P = 1/24 - sum sigma_1(n) q^n; the weight-2 quasimodular normalization
// with D log eta = -P.
QSeries p_series(long T);

// Normalized cuspidal eigenform given by its stored coefficients b(1..T).
// level is needed to pick the Hecke recursion at bad primes.
class Eigenform {
public:
    Eigenform(long level, std::vector<Int> coeffs);

    long level() const { return level_; }
    long stored_terms() const { return static_cast<long>(b_.size()); }

    // Stored coefficient, 1 <= n <= stored_terms().
    const Int& at(long n) const;

    // Coefficient for arbitrary n >= 1, extending by multiplicativity and the
    // Hecke recursion at prime powers; requires every prime factor of n to be
    // <= stored_terms().
    Int b_at(long n) const;

    // q-expansion sum b(n) q^n through q^T.
    QSeries series(long T) const;

    // Checks b(1) = 1 (MissingNormalization), multiplicativity on coprime
    // pairs, and the prime-power recursions for p <= sqrt(stored_terms())
    // (HeckeInconsistency).
    void verify() const;

private:
    Int prime_power_coeff(long p, long a) const;

    long level_;
    std::vector<Int> b_; // b_[n-1] = b(n)
};

// File format: optional "level N" first line, then ascending "n b(n)" lines
// starting at "1 1". fallback_level is used when the file has no level line.
Eigenform load_eigenform(const std::string& path, long fallback_level);

// Adopts the coefficients of a q-series with min exponent 1 and unit leading
// coefficient; verification is run before returning.
Eigenform eigenform_from_series(const QSeries& s, long level);

// Formal integral sum b(n)/n q^n of the eigenform's expansion.
QSeries eichler_integral(const Eigenform& form, long T);
QSeries eichler_integral(const QSeries& weight_two, long T);

// The level-32 cast used throughout: the weight-2 eigenform g, the
// Hauptmodul-type eta quotients, the two weakly holomorphic weight-2 inputs,
// and the lattice invariants.
struct Builtin32 {
    QSeries g;  // eta(4t)^2 eta(8t)^2, q - 2q^5 - 3q^9 + ...
    QSeries L;  // eta(8t)^6 / (eta(4t)^2 eta(16t)^4), leading q^{-1}
    QSeries L2; // L at 2tau as an eta quotient, leading q^{-2}
    QSeries W1; // -g * L2, leading -q^{-1}, exponents 3 mod 4
    QSeries W2; // E4(4tau)/g, leading q^{-1}, integer coefficients
    CurveModel curve;                   // g2 = -16, g3 = 0
    std::shared_ptr<const Eigenform> form; // coefficients of g through T
};

Builtin32 builtin_32(long T);

} // namespace padiclab
