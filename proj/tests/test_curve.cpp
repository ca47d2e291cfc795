#include "qflab/curve.hpp"

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

// y^2 = -x(x+2)(x+3)
HyperellipticCurve prop33_curve() { return HyperellipticCurve(poly_of({0, -6, -5, -1})); }

FunctionElement fx() { return fe_from_x(RatFn(Poly::x())); }
FunctionElement fy() { return FunctionElement{RatFn(), RatFn(Poly(Rat(1)))}; }

DiagonalForm form_of(std::initializer_list<long> entries)
{
    std::vector<Rat> v;
    for (long e : entries) v.push_back(Rat(e));
    return DiagonalForm(std::move(v));
}

} // namespace

TEST_CASE("curve validation")
{
    CHECK(prop33_curve().genus() == 1);
    CHECK_THROWS_AS(HyperellipticCurve(poly_of({1, 1})), domain_error);         // degree too small
    CHECK_THROWS_AS(HyperellipticCurve(poly_of({0, 0, 0, 1})), domain_error);   // x^3 not squarefree
}

TEST_CASE("principal divisors on the elliptic example")
{
    HyperellipticCurve C = prop33_curve();
    ClosedPoint origin = ClosedPoint::finite(Poly::x(), ClosedPoint::Branch::Ramified);
    ClosedPoint minus2 = ClosedPoint::finite(poly_of({2, 1}), ClosedPoint::Branch::Ramified);
    ClosedPoint minus3 = ClosedPoint::finite(poly_of({3, 1}), ClosedPoint::Branch::Ramified);
    ClosedPoint inf = ClosedPoint::infinite_ramified();

    Divisor dx = principal_divisor(C, fx());
    CHECK(dx.degree() == 0);
    CHECK(dx.support().size() == 2);
    CHECK(dx.multiplicity(origin) == 2);
    CHECK(dx.multiplicity(inf) == -2);

    FunctionElement gx2 = fe_from_x(RatFn(poly_of({2, 1})));
    Divisor dx2 = principal_divisor(C, gx2);
    CHECK(dx2.multiplicity(minus2) == 2);
    CHECK(dx2.multiplicity(inf) == -2);

    Divisor dy = principal_divisor(C, fy());
    CHECK(dy.multiplicity(origin) == 1);
    CHECK(dy.multiplicity(minus2) == 1);
    CHECK(dy.multiplicity(minus3) == 1);
    CHECK(dy.multiplicity(inf) == -3);
    CHECK(dy.degree() == 0);

    CHECK_THROWS_AS(principal_divisor(C, FunctionElement{}), domain_error);
}

TEST_CASE("divisors over higher-degree and split places")
{
    HyperellipticCurve C = prop33_curve();
    // f(i) = 5 - 5i is not a square in Q(i): x^2+1 pulls back to one inert point
    Divisor d = principal_divisor(C, fe_from_x(RatFn(poly_of({1, 0, 1}))));
    bool found_inert = false;
    for (const auto& [P, m] : d.support())
        if (!P.is_infinite() && P.branch() == ClosedPoint::Branch::Inert) {
            CHECK(P.residue_degree() == 4);
            CHECK(m == 1);
            found_inert = true;
        }
    CHECK(found_inert);
    CHECK(d.degree() == 0);

    // f(1) = -12 is not a rational square: x - 1 pulls back to a degree-2 point
    Divisor d1 = principal_divisor(C, fe_from_x(RatFn(poly_of({-1, 1}))));
    bool found_deg2 = false;
    for (const auto& [P, m] : d1.support())
        if (!P.is_infinite() && P.branch() == ClosedPoint::Branch::Inert) found_deg2 = true;
    CHECK(found_deg2);

    // on y^2 = x^3 + x^2 - 3x: f = 3 = x^2 mod (x^2 - 3), so that place splits
    // with branches y = +-x
    HyperellipticCurve Cs(poly_of({0, -3, 1, 1}));
    Divisor ds = principal_divisor(Cs, fe_from_x(RatFn(poly_of({-3, 0, 1}))));
    ClosedPoint sp = ClosedPoint::finite(poly_of({-3, 0, 1}), ClosedPoint::Branch::Split, Poly::x());
    ClosedPoint sm = ClosedPoint::finite(poly_of({-3, 0, 1}), ClosedPoint::Branch::Split, -Poly::x());
    CHECK(ds.multiplicity(sp) == 1);
    CHECK(ds.multiplicity(sm) == 1);
    CHECK(ds.degree() == 0);
    // y - x vanishes at the + branch only
    FunctionElement ymx = fe_sub(FunctionElement{RatFn(), RatFn(Poly(Rat(1)))}, fe_from_x(RatFn(Poly::x())));
    Divisor dymx = principal_divisor(Cs, ymx);
    CHECK(dymx.multiplicity(sp) >= 1);
    CHECK(dymx.multiplicity(sm) == 0);

    // on y^2 = x^3 + 3: f(1) = 4, so x - 1 pulls back to the rational points (1, +-2)
    HyperellipticCurve C2(poly_of({3, 0, 0, 1}));
    Divisor dm1 = principal_divisor(C2, fe_from_x(RatFn(poly_of({-1, 1}))));
    ClosedPoint plus = ClosedPoint::finite(poly_of({-1, 1}), ClosedPoint::Branch::Split, Poly(Rat(2)));
    ClosedPoint minus = ClosedPoint::finite(poly_of({-1, 1}), ClosedPoint::Branch::Split, Poly(Rat(-2)));
    CHECK(dm1.multiplicity(plus) == 1);
    CHECK(dm1.multiplicity(minus) == 1);
}

TEST_CASE("divisor homomorphism and degree zero on random functions")
{
    std::vector<HyperellipticCurve> curves{
        prop33_curve(),
        HyperellipticCurve(poly_of({0, -1, 0, 1})),        // y^2 = x^3 - x
        HyperellipticCurve(poly_of({3, 0, 0, 1})),         // y^2 = x^3 + 3
        HyperellipticCurve(poly_of({1, 0, 0, 0, 1})),      // y^2 = x^4 + 1 (split at infinity)
        HyperellipticCurve(poly_of({3, 0, 0, 0, 2})),      // y^2 = 2x^4 + 3 (inert at infinity)
    };
    std::mt19937_64 rng(61);
    auto random_term = [&](bool allow_y) -> FunctionElement {
        long c = static_cast<long>(rng() % 9) + 1;
        if (rng() % 2) c = -c;
        int k = static_cast<int>(rng() % 4);
        Poly mono = Poly::monomial(Rat(c), k);
        if (allow_y && rng() % 3 == 0) return FunctionElement{RatFn(), RatFn(mono)};
        return fe_from_x(RatFn(mono));
    };
    for (int trial = 0; trial < 30; ++trial) {
        const HyperellipticCurve& C = curves[trial % curves.size()];
        FunctionElement g = random_term(true);
        if (rng() % 2) g = fe_add(g, random_term(true));
        FunctionElement h = random_term(true);
        if (g.is_zero() || h.is_zero()) continue;
        Divisor dg = principal_divisor(C, g);
        Divisor dh = principal_divisor(C, h);
        CHECK(dg.degree() == 0);
        CHECK(dh.degree() == 0);
        Divisor dgh = principal_divisor(C, fe_mul(C, g, h));
        CHECK(dgh == dg + dh);
    }
}

TEST_CASE("fiber index")
{
    DiagonalForm q = form_of({1, -2, 3, -6});
    ClosedPoint origin = ClosedPoint::finite(Poly::x(), ClosedPoint::Branch::Ramified);
    CHECK(fiber_index(q, origin) == FiberIndex::Two);
    CHECK(fiber_index(form_of({1, -1, 1}), origin) == FiberIndex::One);
    ClosedPoint inert = ClosedPoint::finite(poly_of({1, 0, 1}), ClosedPoint::Branch::Inert);
    CHECK(fiber_index(q, inert) == FiberIndex::Unknown);
}

TEST_CASE("delta image test")
{
    HyperellipticCurve C = prop33_curve();
    DiagonalForm q = form_of({1, -2, 3, -6});
    CHECK(delta_image_test(q, fx(), C) == DeltaResult::InImage);
    CHECK(delta_image_test(q, fy(), C) == DeltaResult::NotInImage);
    CHECK(delta_image_test(form_of({1, -1, 1}), fy(), C) == DeltaResult::InImage);
    // odd multiplicity at a nonrational point with no rational obstruction
    CHECK(delta_image_test(q, fe_from_x(RatFn(poly_of({1, 0, 1}))), C) == DeltaResult::Unknown);

    // invariance under constants and squares
    std::mt19937_64 rng(67);
    for (int i = 0; i < 10; ++i) {
        long c = static_cast<long>(rng() % 20) + 1;
        if (rng() % 2) c = -c;
        FunctionElement g = fe_add(fx(), fe_constant(Rat(2)));
        DeltaResult base = delta_image_test(q, g, C);
        CHECK(delta_image_test(q, fe_mul(C, g, fe_constant(Rat(c))), C) == base);
        FunctionElement sq = fe_mul(C, fy(), fy());
        CHECK(delta_image_test(q, fe_mul(C, g, sq), C) == base);
    }
}

TEST_CASE("dn subgroup test")
{
    HyperellipticCurve C = prop33_curve();
    DiagonalForm q = form_of({1, -2, 3, -6});
    CHECK(dn_subgroup_test(q, fe_constant(Rat(5)), C) == DnResult::Yes);
    CHECK(dn_subgroup_test(q, fx(), C) == DnResult::Yes);    // div x = 2D
    CHECK(dn_subgroup_test(q, fy(), C) == DnResult::Unknown);
    CHECK(dn_subgroup_test(form_of({1, -1, 1}), fy(), C) == DnResult::Yes);
}

TEST_CASE("local leading coefficients")
{
    HyperellipticCurve C = prop33_curve();
    ClosedPoint origin = ClosedPoint::finite(Poly::x(), ClosedPoint::Branch::Ramified);
    LocalLeading at0 = local_leading(C, origin, fx());
    CHECK(at0.valuation == 2);
    CHECK(at0.leading == make_rat(-1, 6));   // x = y^2/f'(0) + ...

    LocalLeading yat0 = local_leading(C, origin, fy());
    CHECK(yat0.valuation == 1);
    CHECK(yat0.leading == 1);

    LocalLeading xinf = local_leading(C, ClosedPoint::infinite_ramified(), fx());
    CHECK(xinf.valuation == -2);

    LocalLeading yinf = local_leading(C, ClosedPoint::infinite_ramified(), fy());
    CHECK(yinf.valuation == -3);

    // split points at infinity on y^2 = x^4 + 1: v(x) = -1, v(y) = -2
    HyperellipticCurve Ce(poly_of({1, 0, 0, 0, 1}));
    LocalLeading xe = local_leading(Ce, ClosedPoint::infinite_split(+1), fx());
    CHECK(xe.valuation == -1);
    LocalLeading ye = local_leading(Ce, ClosedPoint::infinite_split(+1), fy());
    CHECK(ye.valuation == -2);
    CHECK(ye.leading == 1);
    LocalLeading ym = local_leading(Ce, ClosedPoint::infinite_split(-1), fy());
    CHECK(ym.leading == -1);

    // split rational point (1, 2) on y^2 = x^3 + 3: x-1 vanishes to order 1
    HyperellipticCurve C2(poly_of({3, 0, 0, 1}));
    ClosedPoint p = ClosedPoint::finite(poly_of({-1, 1}), ClosedPoint::Branch::Split, Poly(Rat(2)));
    LocalLeading ll = local_leading(C2, p, fe_from_x(RatFn(poly_of({-1, 1}))));
    CHECK(ll.valuation == 1);
    CHECK(ll.leading == 1);

    // y - 2 vanishes at (1,2) but not at (1,-2)
    FunctionElement ym2 = fe_sub(fy(), fe_constant(Rat(2)));
    CHECK(local_leading(C2, p, ym2).valuation >= 1);
    ClosedPoint pm = ClosedPoint::finite(poly_of({-1, 1}), ClosedPoint::Branch::Split, Poly(Rat(-2)));
    CHECK(local_leading(C2, pm, ym2).valuation == 0);
}

TEST_CASE("sqrt_mod_minpoly")
{
    // f = x^2 - 2 is a square mod x^2 - 2? sqrt(2) in Q(sqrt 2): f mod r = 0 -> rejected
    Poly f = prop33_curve().f();
    // over Q[x]/(x^2+1): f(i) = 5 - 5i, norm 50 not a square: inert
    CHECK_FALSE(sqrt_mod_minpoly(f, poly_of({1, 0, 1})).has_value());
    // over Q[x]/(x^2-2): f(s) = -s(s+2)(s+3) = -(5s+2)(s... compute: value has square? just consistency:
    auto s2 = sqrt_mod_minpoly(f, poly_of({-2, 0, 1}));
    if (s2) {
        Poly check = pmod(*s2 * *s2 - pmod(f, poly_of({-2, 0, 1})), poly_of({-2, 0, 1}));
        CHECK(check.is_zero());
    }
    // an explicit split: x^2 - x is a square mod ... use f2 = x^2 over r = x^2 - 3? f must be the curve poly;
    // instead check: t^2 where t = x+1 mod r = x^2+x+1: f3 = (x+1)^2 mod r
    Poly r = poly_of({1, 1, 1});
    Poly sq = pmod(poly_of({1, 1}) * poly_of({1, 1}), r);
    // build a cubic curve polynomial congruent to sq mod r
    Poly fbig = sq + r * Poly::x();
    if (is_squarefree(fbig) && fbig.degree() >= 3) {
        auto root = sqrt_mod_minpoly(fbig, r);
        REQUIRE(root.has_value());
        CHECK(pmod(*root * *root - sq, r).is_zero());
    }
}
