#include "qflab/local.hpp"

#include <algorithm>

namespace qflab {

namespace {

// (u-1)/2 mod 2 for an odd residue u mod 8.
int eps2(const Int& u_mod8) { return (u_mod8 == 3 || u_mod8 == 7) ? 1 : 0; }

// (u^2-1)/8 mod 2 for an odd residue u mod 8.
int omega2(const Int& u_mod8) { return (u_mod8 == 3 || u_mod8 == 5) ? 1 : 0; }

} // namespace

bool is_local_square(const Rat& a, const Place& v)
{
    if (a == 0) throw domain_error("is_local_square: zero input");
    if (v.is_real()) return sign(a) > 0;
    const Int& p = v.prime();
    long val = padic_valuation(a, p);
    if (val % 2 != 0) return false;
    Rat u = padic_unit_part(a, p);
    if (p == 2) return unit_mod_pk(u, p, 3) == 1;
    Int r = unit_mod_pk(u, p, 1);
    return legendre_symbol(r, p) == 1;
}

int hilbert_symbol(const Rat& a, const Rat& b, const Place& v)
{
    if (a == 0 || b == 0) throw domain_error("hilbert_symbol: zero input");
    if (v.is_real()) return (sign(a) < 0 && sign(b) < 0) ? -1 : 1;

    const Int& p = v.prime();
    long alpha = padic_valuation(a, p);
    long beta = padic_valuation(b, p);
    Rat u = padic_unit_part(a, p);
    Rat w = padic_unit_part(b, p);

    if (p == 2) {
        Int u8 = unit_mod_pk(u, p, 3);
        Int w8 = unit_mod_pk(w, p, 3);
        long e = eps2(u8) * eps2(w8) + alpha * omega2(w8) + beta * omega2(u8);
        return (e % 2 == 0) ? 1 : -1;
    }

    Int ur = unit_mod_pk(u, p, 1);
    Int wr = unit_mod_pk(w, p, 1);
    long eps_p = ((p - 1) / 2) % 2 != 0 ? 1 : 0;
    int s = 1;
    if ((alpha * beta * eps_p) % 2 != 0) s = -s;
    if (beta % 2 != 0 && legendre_symbol(ur, p) == -1) s = -s;
    if (alpha % 2 != 0 && legendre_symbol(wr, p) == -1) s = -s;
    return s;
}

std::vector<Place> candidate_places(const std::vector<Rat>& values)
{
    std::vector<Place> out;
    out.push_back(Place::real());
    out.push_back(Place::finite(2));
    std::vector<Int> primes;
    for (const Rat& x : values) {
        if (x == 0) continue;
        auto s = odd_prime_support(x);
        primes.insert(primes.end(), s.begin(), s.end());
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (const Int& p : primes) out.push_back(Place::finite(p));
    return out;
}

std::vector<Place> hilbert_support(const Rat& a, const Rat& b)
{
    if (a == 0 || b == 0) throw domain_error("hilbert_support: zero input");
    std::vector<Place> out;
    for (const Place& v : candidate_places({a, b}))
        if (hilbert_symbol(a, b, v) == -1) out.push_back(v);
    return out;
}

} // namespace qflab
