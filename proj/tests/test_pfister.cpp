#include "qflab/pfister.hpp"

#include <doctest.h>

#include <random>

using namespace qflab;

namespace {

DiagonalForm form_of(std::initializer_list<long> entries)
{
    std::vector<Rat> v;
    for (long e : entries) v.push_back(Rat(e));
    return DiagonalForm(std::move(v));
}

PfisterForm pf(std::initializer_list<long> slots)
{
    std::vector<Rat> v;
    for (long s : slots) v.push_back(Rat(s));
    return PfisterForm(std::move(v));
}

} // namespace

TEST_CASE("expand")
{
    CHECK(expand(pf({-2})) == form_of({1, -2}));
    CHECK(expand(pf({-2, 3})) == form_of({1, -2, 3, -6}));
    CHECK(expand(pf({1, 3})) == form_of({1, 1, 3, 3}));
    DiagonalForm e = expand(pf({2, 3, 5}));
    CHECK(e.rank() == 8);
    CHECK(e.entries().front() == 1);
    CHECK(represents(e, Rat(1), Field::global()));
}

TEST_CASE("pfister neighbors")
{
    PfisterForm p = pf({-2, 3});
    CHECK(is_pfister_neighbor(form_of({1, -2, 3}), p));
    CHECK(is_pfister_neighbor(expand(p), p));
    CHECK_FALSE(is_pfister_neighbor(form_of({1, -2}), p));
    CHECK_THROWS_AS(is_pfister_neighbor(form_of({1, 1, 1, 1, 1}), p), domain_error);
    // scaled subform is a neighbor
    CHECK(is_pfister_neighbor(form_of({5, -10, 15}), p));
    // a form with the wrong invariants is not
    CHECK_FALSE(is_pfister_neighbor(form_of({1, 1, 1}), p));
}

TEST_CASE("norm membership")
{
    DiagonalForm two_squares = form_of({1, 1});
    NormMembershipVerdict m5 = norm_member(two_squares, Rat(5), Field::global());
    CHECK(m5.answer == NormMembershipVerdict::Answer::Member);
    REQUIRE(m5.witness.has_value());
    {
        Rat acc(0);
        for (const Rat& w : *m5.witness) acc += w * w;
        CHECK(acc == 5);
    }

    NormMembershipVerdict m3 = norm_member(two_squares, Rat(3), Field::global());
    CHECK(m3.answer == NormMembershipVerdict::Answer::NonMember);

    // isotropic forms have full norm group
    NormMembershipVerdict any = norm_member(form_of({1, -1}), Rat(-77), Field::global());
    CHECK(any.answer == NormMembershipVerdict::Answer::Member);

    // locally isotropic: every x is a member at that place
    NormMembershipVerdict loc =
        norm_member(form_of({1, -2, 3, -6}), Rat(7), Field::at(Place::finite(5)));
    CHECK(loc.answer == NormMembershipVerdict::Answer::Member);
    CHECK(loc.reason.find("N_q = k*") != std::string::npos);

    // not recognizable: honest Unknown
    NormMembershipVerdict unk = norm_member(form_of({2, 3, 5, 7}), Rat(2), Field::global());
    CHECK(unk.answer == NormMembershipVerdict::Answer::Unknown);

    // neighbor answers through its ambient Pfister form
    NormMembershipVerdict nb =
        norm_member(form_of({1, -2, 3}), Rat(7), Field::at(Place::finite(7)), pf({-2, 3}));
    CHECK(nb.answer != NormMembershipVerdict::Answer::Unknown);

    CHECK_THROWS_AS(norm_member(two_squares, Rat(0), Field::global()), domain_error);
}

TEST_CASE("norm group closure")
{
    CHECK(norm_group_closure_check(pf({1}), {Rat(1), Rat(2), Rat(5)}, Field::global()));
    CHECK(norm_group_closure_check(pf({-2, 3}), {Rat(1)}, Field::global()));
    std::mt19937_64 rng(41);
    std::vector<Rat> samples;
    for (int i = 0; i < 10; ++i) samples.push_back(Rat(static_cast<long>(rng() % 50) + 1));
    CHECK(norm_group_closure_check(pf({-2, 3}), samples, Field::at(Place::finite(7))));
}

TEST_CASE("quaternion ramification")
{
    auto r1 = ramified_places(QuaternionAlgebra(Rat(-1), Rat(-1)));
    REQUIRE(r1.size() == 2);
    CHECK(r1[0] == Place::real());
    CHECK(r1[1] == Place::finite(2));

    auto r2 = ramified_places(QuaternionAlgebra(Rat(-1), Rat(-3)));
    REQUIRE(r2.size() == 2);
    CHECK(r2[0] == Place::real());
    CHECK(r2[1] == Place::finite(3));

    CHECK(ramified_places(QuaternionAlgebra(Rat(1), Rat(1))).empty());
}

TEST_CASE("reduced norms")
{
    QuaternionAlgebra H(Rat(-1), Rat(-1));
    CHECK(reduced_norm_member(H, Rat(3)));
    CHECK_FALSE(reduced_norm_member(H, Rat(-1)));
    QuaternionAlgebra split(Rat(1), Rat(1));
    CHECK(reduced_norm_member(split, Rat(-5)));
    CHECK_THROWS_AS(reduced_norm_member(H, Rat(0)), domain_error);

    // coherence with the associated Pfister form <1,-a> (x) <1,-b>
    std::mt19937_64 rng(43);
    for (int i = 0; i < 30; ++i) {
        long a = static_cast<long>(rng() % 10) + 1;
        long b = static_cast<long>(rng() % 10) + 1;
        if (rng() % 2) a = -a;
        if (rng() % 2) b = -b;
        long x = static_cast<long>(rng() % 30) + 1;
        if (rng() % 2) x = -x;
        QuaternionAlgebra D{Rat(a), Rat(b)};
        NormMembershipVerdict v = norm_member(D.norm_form(), Rat(x), Field::global());
        REQUIRE(v.answer != NormMembershipVerdict::Answer::Unknown);
        CHECK(reduced_norm_member(D, Rat(x)) == v.is_member());
    }
}

TEST_CASE("sqrt collapse")
{
    DiagonalForm q = form_of({1, -2, 3, -30});
    CollapseResult c = adjoin_sqrt_collapse(q, Rat(5), Field::global());
    CHECK_FALSE(c.extension_trivial);
    CHECK(c.form == form_of({1, -2, 3, -6}));

    CollapseResult t = adjoin_sqrt_collapse(q, Rat(9), Field::global());
    CHECK(t.extension_trivial);
    CHECK(t.form == q);

    // d a local square: unchanged at that place
    CollapseResult l = adjoin_sqrt_collapse(q, Rat(-1), Field::at(Place::finite(5)));
    CHECK(l.extension_trivial);

    // <1,a,b,abd> collapses to <1,a><1,b> up to isometry
    DiagonalForm gen = form_of({1, 7, -3, 7 * (-3) * 5});
    CollapseResult g = adjoin_sqrt_collapse(gen, Rat(5), Field::global());
    CHECK(is_isometric(g.form, tensor(form_of({1, 7}), form_of({1, -3})), Field::global()));
}

TEST_CASE("lemma equivalence on a small sample")
{
    // isotropy of p (x) <1,-x> always matches hyperbolicity for Pfister p
    std::mt19937_64 rng(47);
    for (int i = 0; i < 40; ++i) {
        int fold = 1 + static_cast<int>(rng() % 3);
        std::vector<Rat> slots;
        for (int j = 0; j < fold; ++j) {
            long s = static_cast<long>(rng() % 8) + 1;
            slots.push_back(Rat(rng() % 2 ? s : -s));
        }
        long x = static_cast<long>(rng() % 20) + 1;
        if (rng() % 2) x = -x;
        DiagonalForm e = expand(PfisterForm(slots));
        DiagonalForm t = direct_sum(e, scale(Rat(-x), e));
        CHECK(is_isotropic(t, Field::global()) == is_hyperbolic(t, Field::global()));
        CHECK(represents(e, Rat(x), Field::global()) == is_isotropic(t, Field::global()));
    }
}
