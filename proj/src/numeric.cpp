#include "qflab/numeric.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace qflab {

namespace {

unsigned long trial_division_limit()
{
    if (const char* s = std::getenv("QFLAB_FACTOR_LIMIT")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(s, &end, 10);
        if (end != s && v >= 2) return v;
    }
    return 1000000UL;
}

Int pollard_brent(const Int& n)
{
    // Brent's cycle variant; n is odd, composite, and not a perfect power of
    // a prime below the trial limit.
    for (unsigned long c = 1;; ++c) {
        Int x = 2, y = 2, d = 1, q = 1;
        unsigned long lam = 1;
        Int saved_y = y;
        while (d == 1) {
            x = y;
            for (unsigned long i = 0; i < lam; ++i) y = (y * y + c) % n;
            unsigned long k = 0;
            while (k < lam && d == 1) {
                saved_y = y;
                unsigned long steps = std::min<unsigned long>(128, lam - k);
                for (unsigned long i = 0; i < steps; ++i) {
                    y = (y * y + c) % n;
                    Int diff = x - y;
                    if (sign(diff) < 0) diff = -diff;
                    if (diff == 0) diff = 1;
                    q = (q * diff) % n;
                }
                d = gcd(q, n);
                k += steps;
            }
            lam *= 2;
        }
        if (d == n) {
            // backtrack one step at a time
            d = 1;
            y = saved_y;
            while (d == 1) {
                y = (y * y + c) % n;
                Int diff = x - y;
                if (sign(diff) < 0) diff = -diff;
                d = gcd(diff, n);
            }
        }
        if (d != n) return d;
    }
}

void factor_into(const Int& n, std::map<Int, unsigned>& out)
{
    if (n == 1) return;
    if (is_prime(n)) {
        out[n] += 1;
        return;
    }
    Int d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

} // namespace

bool is_prime(const Int& n)
{
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

Factorization factorize(const Int& n)
{
    if (n == 0) throw domain_error("factorize: zero input");
    Factorization f;
    Int m = n;
    if (sign(m) < 0) {
        f.sign = -1;
        m = -m;
    }
    std::map<Int, unsigned> acc;
    const unsigned long limit = trial_division_limit();
    unsigned long p = 2;
    while (p <= limit && Int(p) * Int(p) <= m) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            acc[Int(p)] += 1;
            m /= p;
        }
        p = (p == 2) ? 3 : p + 2;
    }
    if (m > 1) {
        if (Int(limit) * Int(limit) > m || is_prime(m))
            acc[m] += 1;
        else
            factor_into(m, acc);
    }
    f.primes.assign(acc.begin(), acc.end());
    return f;
}

SquareClass squarefree_part(const Int& x)
{
    if (x == 0) throw domain_error("squarefree_part: zero input");
    Factorization f = factorize(x);
    Int rep = f.sign;
    for (const auto& [p, e] : f.primes)
        if (e % 2 != 0) rep *= p;
    return SquareClass{rep};
}

SquareClass squarefree_part(const Rat& x)
{
    if (x == 0) throw domain_error("squarefree_part: zero input");
    // x ~ num*den modulo squares
    return squarefree_part(Int(num(x) * den(x)));
}

int legendre_symbol(const Int& a, const Int& p)
{
    if (p == 2 || !is_prime(p)) throw domain_error("legendre_symbol: p must be an odd prime");
    return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

long padic_valuation(const Int& x, const Int& p)
{
    if (x == 0) throw domain_error("padic_valuation: zero input");
    if (p < 2 || !is_prime(p)) throw domain_error("padic_valuation: p must be prime");
    Int rem;
    return static_cast<long>(mpz_remove(rem.get_mpz_t(), x.get_mpz_t(), p.get_mpz_t()));
}

long padic_valuation(const Rat& x, const Int& p)
{
    if (x == 0) throw domain_error("padic_valuation: zero input");
    return padic_valuation(num(x), p) - padic_valuation(den(x), p);
}

Rat padic_unit_part(const Rat& x, const Int& p)
{
    long v = padic_valuation(x, p);
    Rat pw(1);
    Int pp;
    mpz_pow_ui(pp.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(v < 0 ? -v : v));
    if (v >= 0)
        pw = Rat(1, pp);
    else
        pw = Rat(pp);
    Rat u = x * pw;
    u.canonicalize();
    return u;
}

Int unit_mod_pk(const Rat& x, const Int& p, unsigned k)
{
    Int pk;
    mpz_pow_ui(pk.get_mpz_t(), p.get_mpz_t(), k);
    const Int& n = num(x);
    const Int& d = den(x);
    if (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t()) || mpz_divisible_p(d.get_mpz_t(), p.get_mpz_t()))
        throw domain_error("unit_mod_pk: not a p-adic unit");
    Int dinv;
    if (mpz_invert(dinv.get_mpz_t(), d.get_mpz_t(), pk.get_mpz_t()) == 0)
        throw domain_error("unit_mod_pk: denominator not invertible");
    Int r = (n % pk) * dinv % pk;
    if (sign(r) < 0) r += pk;
    return r;
}

std::vector<Int> odd_prime_support(const Rat& x)
{
    if (x == 0) throw domain_error("odd_prime_support: zero input");
    std::vector<Int> out;
    for (const Int& part : {num(x), den(x)}) {
        Factorization f = factorize(part);
        for (const auto& [p, e] : f.primes)
            if (p != 2) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace qflab
