#pragma once

#include <array>
#include <string>
#include <vector>

#include "padiclab/qseries.hpp"
#include "padiclab/rational.hpp"

namespace padiclab {

// y^2 = 4x^3 - g2 x - g3. Derived invariants are recomputed on demand.
struct CurveModel {
    Rat g2;
    Rat g3;

    Rat discriminant() const { return g2 * g2 * g2 - 27 * g3 * g3; }
    Rat Q() const { return 12 * g2; }
    Rat R() const { return -216 * g3; }
    // short form y^2 = x^3 + Ax + B via y -> 2y
    Rat short_A() const { return -g2 / 4; }
    Rat short_B() const { return -g3 / 4; }

    bool good_reduction(const Int& p) const {
        return valuation(g2, p) >= 0 && valuation(g3, p) >= 0 && valuation(discriminant(), p) == 0;
    }
};

// Validates nonsingularity.
CurveModel curve_normalize(const Rat& g2, const Rat& g3);
// From a-invariants (a1, a2, a3, a4, a6).
CurveModel curve_normalize(const std::array<Rat, 5>& ainv);
// Curve file: either lines "g2 <rational>" / "g3 <rational>" or a line
// "ainv a1 a2 a3 a4 a6".
CurveModel parse_curve_file(const std::string& path);

// Laurent data of wp = z^{-2} + sum_{k>=2} c_k z^{2k-2}.
struct WpLaurent {
    CurveModel curve;
    std::vector<Rat> c; // c[i] = c_{i+2}, 2 <= k <= K

    const Rat& ck(long k) const { return c.at(static_cast<size_t>(k - 2)); }
    long K() const { return static_cast<long>(c.size()) + 1; }
};

// c2 = g2/20, c3 = g3/28, c_k = 3 sum_{j=2}^{k-2} c_j c_{k-j} / ((2k+1)(k-3)).
WpLaurent wp_coefficients(const CurveModel& curve, long K);

// wp as a Laurent series in z, truncation 2K-2.
QSeries wp_z_series(const WpLaurent& wp);
// zeta = 1/z - sum_k c_k z^{2k-1}/(2k-1); wp = -zeta'.
QSeries zeta_z_series(const WpLaurent& wp);

struct LatticeEisenstein {
    Rat G; // G_{2k} = c_k (2k-2)!/2
    Rat E; // E_{2k} = -(4k/B_{2k}) G_{2k}
};
LatticeEisenstein lattice_eisenstein(const CurveModel& curve, long two_k);

struct IdentityReport {
    std::string name;
    bool pass = false;
    long first_mismatch = 0; // exponent, valid when !pass
    long terms = 0;
    std::string detail;
};

// wp(Lambda_32, Eichler integral of g) vs the level-16 Hauptmodul at 2tau,
// compared exactly through q^T.
IdentityReport verify_wp_lift(long T);

struct TwentyZetaReport {
    bool pass = false;
    int sigma = 0; // the unique sign with LHS = sigma * RHS, when pass
    long terms = 0;
    bool rhs_times_3g_integral = false;
    std::string detail;
};

// LHS = 20*zeta(Lambda_32, E_g) + integral(E4(4tau)/g) against
// RHS = (56P(4tau) - 32P(8tau) + 160P(16tau) - 640P(32tau))/g, up to one
// global sign sigma recorded in the report.
TwentyZetaReport verify_20zeta_identity(long T);

} // namespace padiclab
