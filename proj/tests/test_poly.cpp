#include "qflab/poly.hpp"

#include <doctest.h>

#include <random>

using namespace qflab;

namespace {

Poly poly_of(std::initializer_list<long> coeffs)
{
    std::vector<Rat> v;
    for (long c : coeffs) v.push_back(Rat(c));
    return Poly(std::move(v));
}

Poly random_poly(std::mt19937_64& rng, int max_deg, long height)
{
    int d = static_cast<int>(rng() % (max_deg + 1));
    std::vector<Rat> c(static_cast<size_t>(d) + 1);
    for (auto& x : c) x = Rat(static_cast<long>(rng() % (2 * height + 1)) - height);
    if (c.back() == 0) c.back() = Rat(1);
    return Poly(std::move(c));
}

} // namespace

TEST_CASE("poly arithmetic")
{
    Poly f = poly_of({1, 2, 1});   // (x+1)^2
    Poly g = poly_of({1, 1});
    CHECK(g * g == f);
    auto [q, r] = divmod(f, g);
    CHECK(q == g);
    CHECK(r.is_zero());
    CHECK(f.eval(Rat(2)) == 9);
    CHECK(f.shifted(Rat(1)) == poly_of({4, 4, 1}));
    CHECK(poly_of({0, -6, -5, -1}).reversed() == poly_of({-1, -5, -6}));
    CHECK(poly_gcd(f, g) == g);
    CHECK(poly_gcd(poly_of({-2, 0, 2}), poly_of({2, 2})) == poly_of({1, 1}));
}

TEST_CASE("resultant")
{
    // res(x^2-1, x^2-4) = 9 ((roots +-1, +-2), prod (ri - sj) = (1-2)(1+2)(-1-2)(-1+2) = 9)
    CHECK(resultant(poly_of({-1, 0, 1}), poly_of({-4, 0, 1})) == 9);
    // common root: resultant zero
    CHECK(resultant(poly_of({-1, 0, 1}), poly_of({-1, 1})) == 0);
    // res(x, 2x-1) = lc(f)^deg(g) * g(0) = -1
    CHECK(resultant(poly_of({0, 1}), poly_of({-1, 2})) == -1);
}

TEST_CASE("squarefree decomposition")
{
    Poly f = poly_of({1, 1}) * poly_of({1, 1}) * poly_of({-2, 1}) * Rat(3);
    SquarefreeDecomposition dec = squarefree_decomposition(f);
    CHECK(dec.unit == 3);
    REQUIRE(dec.factors.size() == 2);
    CHECK(dec.factors[0].first == poly_of({-2, 1}));
    CHECK(dec.factors[0].second == 1);
    CHECK(dec.factors[1].first == poly_of({1, 1}));
    CHECK(dec.factors[1].second == 2);
    CHECK_FALSE(is_squarefree(f));
    CHECK(is_squarefree(poly_of({-2, 0, 1})));
}

TEST_CASE("factorization over Q")
{
    // x^4 - 1 = (x-1)(x+1)(x^2+1)
    PolyFactors f = factor_poly(poly_of({-1, 0, 0, 0, 1}));
    REQUIRE(f.factors.size() == 3);
    CHECK(f.factors[0].first == poly_of({-1, 1}));
    CHECK(f.factors[1].first == poly_of({1, 1}));
    CHECK(f.factors[2].first == poly_of({1, 0, 1}));

    // irreducible quartic stays whole
    PolyFactors g = factor_poly(poly_of({1, 0, -10, 0, 1}));   // minpoly of sqrt2+sqrt3
    REQUIRE(g.factors.size() == 1);
    CHECK(g.factors[0].first.degree() == 4);

    // content and unit tracking: -18 x^2 + 18 = -18 (x-1)(x+1)
    PolyFactors h = factor_poly(poly_of({18, 0, -18}));
    CHECK(h.unit == -18);
    REQUIRE(h.factors.size() == 2);
}

TEST_CASE("factorization round trip on random products")
{
    std::mt19937_64 rng(57);
    for (int trial = 0; trial < 25; ++trial) {
        Poly prod(Rat(1));
        int pieces = 1 + static_cast<int>(rng() % 3);
        for (int i = 0; i < pieces; ++i) {
            Poly p = random_poly(rng, 3, 6);
            if (p.is_zero() || p.degree() == 0) p = poly_of({1, 1});
            prod = prod * p;
        }
        PolyFactors f = factor_poly(prod);
        Poly rebuilt(f.unit);
        for (const auto& [fac, mult] : f.factors) {
            CHECK(fac.lc() == 1);
            for (int i = 0; i < mult; ++i) rebuilt = rebuilt * fac;
        }
        CHECK(rebuilt == prod);
        // factors are pairwise distinct irreducibles of positive degree
        for (size_t i = 0; i < f.factors.size(); ++i) {
            CHECK(f.factors[i].first.degree() >= 1);
            for (size_t j = i + 1; j < f.factors.size(); ++j)
                CHECK(!(f.factors[i].first == f.factors[j].first));
        }
    }
}

TEST_CASE("rational coefficients")
{
    // 1/2 x^2 - 1/2 = 1/2 (x-1)(x+1)
    Poly f(std::vector<Rat>{make_rat(-1, 2), Rat(0), make_rat(1, 2)});
    PolyFactors fac = factor_poly(f);
    CHECK(fac.unit == make_rat(1, 2));
    REQUIRE(fac.factors.size() == 2);
}

TEST_CASE("mod inverse")
{
    Poly m = poly_of({1, 0, 1});   // x^2 + 1
    Poly a = poly_of({1, 1});      // x + 1
    Poly inv = mod_inverse(a, m);
    CHECK(pmod(a * inv, m) == Poly(Rat(1)));
    CHECK_THROWS_AS(mod_inverse(poly_of({1, 0, 1}), m), domain_error);
}
