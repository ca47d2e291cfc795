#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qflab {

using Int = mpz_class;
using Rat = mpq_class;

// Thrown on violated preconditions (zero inputs, non-prime moduli, ...).
struct domain_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline const Int& num(const Rat& x) { return x.get_num(); }
inline const Int& den(const Rat& x) { return x.get_den(); }

inline int sign(const Int& n) { return sgn(n); }
inline int sign(const Rat& x) { return sgn(x); }

inline Rat make_rat(long n, long d = 1)
{
    Rat r(n, d);
    r.canonicalize();
    return r;
}

inline bool is_perfect_square(const Int& n)
{
    return sign(n) >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Exact integer square root of a perfect square.
inline Int exact_sqrt(const Int& n)
{
    if (!is_perfect_square(n)) throw domain_error("exact_sqrt: not a perfect square");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_square_rat(const Rat& x)
{
    return sign(x) > 0 && is_perfect_square(num(x)) && is_perfect_square(den(x));
}

struct Factorization {
    int sign = 1;                                   // -1 for negative input
    std::vector<std::pair<Int, unsigned>> primes;   // strictly increasing primes
};

// Prime factorization by trial division up to QFLAB_FACTOR_LIMIT (default 10^6),
// with a Pollard-Brent fallback for the remaining cofactor.
Factorization factorize(const Int& n);

bool is_prime(const Int& n);

// Square class of Q*: the unique square-free integer representative.
struct SquareClass {
    Int rep;    // square-free, nonzero

    bool operator==(const SquareClass&) const = default;
    bool is_trivial() const { return rep == 1; }
};

SquareClass squarefree_part(const Rat& x);
SquareClass squarefree_part(const Int& x);

// (a|p) for odd prime p: +1 nonzero square mod p, 0 if p | a, -1 otherwise.
int legendre_symbol(const Int& a, const Int& p);

long padic_valuation(const Int& x, const Int& p);
long padic_valuation(const Rat& x, const Int& p);

// Unit part of x at p: x / p^v(x), as an exact rational with v_p = 0.
Rat padic_unit_part(const Rat& x, const Int& p);

// Residue of a p-adic unit x modulo p^k, as an integer in [0, p^k).
Int unit_mod_pk(const Rat& x, const Int& p, unsigned k);

// Odd primes dividing numerator or denominator, increasing.
std::vector<Int> odd_prime_support(const Rat& x);

} // namespace qflab
