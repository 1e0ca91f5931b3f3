#include "padiclab/rational.hpp"

#include <sstream>

namespace padiclab {

long valuation_int(const Int& n, const Int& p) {
    if (n == 0) return VAL_INF;
    Int tmp;
    return static_cast<long>(mpz_remove(tmp.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

long valuation(const Rat& x, const Int& p) {
    if (x == 0) return VAL_INF;
    return valuation_int(x.get_num(), p) - valuation_int(x.get_den(), p);
}

int legendre_symbol(const Int& a, const Int& p) {
    if (p == 2 || p < 3 || mpz_probab_prime_p(p.get_mpz_t(), 25) == 0)
        throw Error("legendre_symbol: modulus must be an odd prime");
    Int e = (p - 1) / 2;
    Int r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
    if (r == 0) return 0;
    return r == 1 ? 1 : -1;
}

Int reduce_mod(const Rat& x, const Int& p, long N) {
    if (N <= 0) throw Error("reduce_mod: precision must be positive");
    Int m = pow_int(p, static_cast<unsigned long>(N));
    const Int& den = x.get_den();
    if (mpz_divisible_p(den.get_mpz_t(), p.get_mpz_t()))
        throw ArgumentNotPAdicInteger("denominator divisible by " + p.get_str());
    Int r = (x.get_num() % m) * inv_mod(den % m, m) % m;
    if (r < 0) r += m;
    return r;
}

Int inv_mod(const Int& a, const Int& m) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw Error("inv_mod: not invertible");
    return r;
}

std::string to_string(const Rat& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

} // namespace padiclab
