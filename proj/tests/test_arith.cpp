#include "qflab/numeric.hpp"

#include <doctest.h>

#include <random>

using namespace qflab;

TEST_CASE("factorize")
{
    CHECK(factorize(Int(1)).primes.empty());
    CHECK(factorize(Int(1)).sign == 1);

    Factorization f = factorize(Int(-36));
    CHECK(f.sign == -1);
    REQUIRE(f.primes.size() == 2);
    CHECK(f.primes[0] == std::make_pair(Int(2), 2u));
    CHECK(f.primes[1] == std::make_pair(Int(3), 2u));

    Factorization g = factorize(Int(6));
    REQUIRE(g.primes.size() == 2);
    CHECK(g.primes[0] == std::make_pair(Int(2), 1u));
    CHECK(g.primes[1] == std::make_pair(Int(3), 1u));

    CHECK_THROWS_AS(factorize(Int(0)), domain_error);

    // product of prime^exp times sign reproduces the input
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        long n = static_cast<long>(rng() % 1000000000000UL) + 2;
        if (rng() % 2) n = -n;
        Factorization fa = factorize(Int(n));
        Int prod = fa.sign;
        for (const auto& [p, e] : fa.primes) {
            CHECK(is_prime(p));
            for (unsigned j = 0; j < e; ++j) prod *= p;
        }
        CHECK(prod == n);
        for (size_t j = 1; j < fa.primes.size(); ++j) CHECK(fa.primes[j - 1].first < fa.primes[j].first);
    }
}

TEST_CASE("squarefree_part")
{
    CHECK(squarefree_part(Rat(1)).rep == 1);
    CHECK(squarefree_part(Rat(36)).rep == 1);
    CHECK(squarefree_part(make_rat(-8, 3)).rep == -6);
    CHECK_THROWS_AS(squarefree_part(Rat(0)), domain_error);

    // squarefree_part(x y^2) = squarefree_part(x)
    std::mt19937_64 rng(11);
    for (int i = 0; i < 60; ++i) {
        Rat x = make_rat(static_cast<long>(rng() % 400) + 1, static_cast<long>(rng() % 40) + 1);
        if (rng() % 2) x = -x;
        Rat y = make_rat(static_cast<long>(rng() % 30) + 1, static_cast<long>(rng() % 10) + 1);
        CHECK(squarefree_part(x * y * y) == squarefree_part(x));
        CHECK(is_square_rat(x / Rat(squarefree_part(x).rep)));
    }
}

TEST_CASE("legendre_symbol")
{
    CHECK(legendre_symbol(Int(1), Int(3)) == 1);
    CHECK(legendre_symbol(Int(2), Int(3)) == -1);
    CHECK(legendre_symbol(Int(-1), Int(5)) == 1);
    CHECK(legendre_symbol(Int(10), Int(5)) == 0);
    CHECK_THROWS_AS(legendre_symbol(Int(1), Int(2)), domain_error);
    CHECK_THROWS_AS(legendre_symbol(Int(1), Int(9)), domain_error);

    // complete multiplicativity on units mod p
    std::mt19937_64 rng(13);
    for (long p : {3L, 5L, 7L, 11L, 13L}) {
        for (int i = 0; i < 20; ++i) {
            long a = static_cast<long>(rng() % 200) - 100;
            long b = static_cast<long>(rng() % 200) - 100;
            if (a % p == 0 || b % p == 0 || a == 0 || b == 0) continue;
            CHECK(legendre_symbol(Int(a) * Int(b), Int(p)) ==
                  legendre_symbol(Int(a), Int(p)) * legendre_symbol(Int(b), Int(p)));
        }
    }
}

TEST_CASE("padic_valuation")
{
    CHECK(padic_valuation(Rat(1), Int(7)) == 0);
    CHECK(padic_valuation(Rat(-6), Int(3)) == 1);
    CHECK(padic_valuation(make_rat(9, 2), Int(2)) == -1);
    CHECK_THROWS_AS(padic_valuation(Rat(0), Int(3)), domain_error);

    // additivity
    std::mt19937_64 rng(17);
    for (int i = 0; i < 50; ++i) {
        Rat x = make_rat(static_cast<long>(rng() % 500) + 1, static_cast<long>(rng() % 60) + 1);
        Rat y = make_rat(static_cast<long>(rng() % 500) + 1, static_cast<long>(rng() % 60) + 1);
        for (long p : {2L, 3L, 5L}) {
            CHECK(padic_valuation(x * y, Int(p)) == padic_valuation(x, Int(p)) + padic_valuation(y, Int(p)));
        }
    }
}

TEST_CASE("unit parts")
{
    Rat u = padic_unit_part(make_rat(9, 2), Int(2));
    CHECK(u == Rat(9));
    CHECK(unit_mod_pk(Rat(17), Int(2), 3) == 1);
    CHECK(unit_mod_pk(make_rat(1, 3), Int(5), 1) == 2);   // 3^-1 = 2 mod 5
}
