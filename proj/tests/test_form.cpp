#include "qflab/form.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace qflab;

namespace {

DiagonalForm form_of(std::initializer_list<long> entries)
{
    std::vector<Rat> v;
    for (long e : entries) v.push_back(Rat(e));
    return DiagonalForm(std::move(v));
}

std::vector<long> longs_of(const DiagonalForm& q)
{
    std::vector<long> v;
    for (const Rat& e : q.entries()) v.push_back(static_cast<long>(num(e).get_si()));
    return v;
}

} // namespace

TEST_CASE("invariants examples")
{
    FormInvariants a = invariants(form_of({1}));
    CHECK(a.rank == 1);
    CHECK(a.disc.rep == 1);
    CHECK(a.hasse_minus.empty());
    CHECK(a.signature == 1);

    FormInvariants b = invariants(form_of({1, -2, 3, -6}));
    CHECK(b.rank == 4);
    CHECK(b.disc.rep == 1);
    CHECK(b.signature == 0);
    CHECK(b.hasse_at(Place::finite(3)) == -1);
    CHECK(b.hasse_at(Place::finite(2)) == 1);

    FormInvariants c = invariants(form_of({1, 1, 3, 3}));
    CHECK(c.rank == 4);
    CHECK(c.disc.rep == 1);
    CHECK(c.signature == 4);
}

TEST_CASE("sum, tensor, scale")
{
    CHECK(tensor(form_of({1, -2}), form_of({1, 3})) == form_of({1, 3, -2, -6}));
    CHECK(scale(Rat(-1), form_of({1, 1})) == form_of({-1, -1}));
    CHECK(direct_sum(form_of({1}), form_of({-1})) == form_of({1, -1}));
    CHECK_THROWS_AS(DiagonalForm({Rat(0)}), domain_error);
}

TEST_CASE("isotropy examples")
{
    DiagonalForm q = form_of({1, -2, 3, -6});
    CHECK(is_isotropic(q, Place::real()));
    CHECK_FALSE(is_isotropic(q, Place::finite(3)));
    CHECK(is_isotropic(form_of({1, 1, 1, 1, 1}), Place::finite(2)));

    CHECK(is_isotropic_global(form_of({1, -1})));
    CHECK_FALSE(is_isotropic_global(q));
    CHECK_FALSE(is_isotropic_global(form_of({1, 1, -3})));
}

TEST_CASE("isometry")
{
    DiagonalForm q = form_of({1, -2, 3, -6});
    DiagonalForm r = form_of({1, 1, 3, 3});
    CHECK(is_isometric(q, r, Field::at(Place::finite(3))));
    CHECK_FALSE(is_isometric(q, r, Field::at(Place::real())));
    CHECK(is_isometric(q, q, Field::global()));
    CHECK(is_isometric(q, q, Field::at(Place::finite(7))));
    // tensor is commutative up to isometry
    CHECK(is_isometric(tensor(form_of({1, -2}), form_of({1, 3})), tensor(form_of({1, 3}), form_of({1, -2})),
                       Field::global()));
}

TEST_CASE("witt decomposition")
{
    WittClass w = witt_decompose(form_of({1, -1}), Field::global());
    CHECK(w.witt_index == 1);
    CHECK_FALSE(w.anisotropic_kernel.has_value());

    WittClass w5 = witt_decompose(form_of({1, -2, 3, -6}), Field::at(Place::finite(5)));
    CHECK(w5.witt_index == 2);
    CHECK(w5.kernel_rank() == 0);

    WittClass wr = witt_decompose(form_of({1, 1, 1, 1}), Field::at(Place::real()));
    CHECK(wr.witt_index == 0);
    CHECK(wr.kernel_rank() == 4);
}

TEST_CASE("witt consistency on random forms")
{
    std::mt19937_64 rng(23);
    std::vector<Field> fields{Field::global(), Field::at(Place::real()), Field::at(Place::finite(2)),
                              Field::at(Place::finite(3)), Field::at(Place::finite(5))};
    for (int trial = 0; trial < 40; ++trial) {
        int rank = 2 + static_cast<int>(rng() % 4);
        std::vector<Rat> entries;
        for (int i = 0; i < rank; ++i) {
            long a = static_cast<long>(rng() % 19) + 1;
            if (rng() % 2) a = -a;
            entries.push_back(Rat(a));
        }
        DiagonalForm q{entries};
        const Field& f = fields[trial % fields.size()];
        WittClass w = witt_decompose(q, f);
        CHECK(q.rank() == 2 * w.witt_index + w.kernel_rank());
        if (w.anisotropic_kernel) {
            CHECK_FALSE(is_isotropic(*w.anisotropic_kernel, f));
            // kernel plus hyperbolic planes reproduces the class of q
            DiagonalForm recomposed = *w.anisotropic_kernel;
            for (int i = 0; i < w.witt_index; ++i) recomposed = direct_sum(recomposed, form_of({1, -1}));
            CHECK(is_isometric(recomposed, q, f));
        } else {
            CHECK(is_hyperbolic(q, f));
        }
    }
}

TEST_CASE("represents")
{
    CHECK(represents(form_of({1, 1}), Rat(5), Field::global()));
    CHECK_FALSE(represents(form_of({1, 1}), Rat(3), Field::global()));
    CHECK_THROWS_AS(represents(form_of({1}), Rat(0), Field::global()), domain_error);

    // a form represents its own entries over every field
    DiagonalForm q = form_of({7, -2, 15});
    for (const Rat& e : q.entries()) {
        CHECK(represents(q, e, Field::global()));
        CHECK(represents(q, e, Field::at(Place::real())));
        CHECK(represents(q, e, Field::at(Place::finite(2))));
        CHECK(represents(q, e, Field::at(Place::finite(7))));
    }

    // against direct search for small ranks
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 40; ++trial) {
        int rank = 1 + static_cast<int>(rng() % 3);
        std::vector<Rat> entries;
        for (int i = 0; i < rank; ++i) {
            long a = static_cast<long>(rng() % 9) + 1;
            if (rng() % 2) a = -a;
            entries.push_back(Rat(a));
        }
        DiagonalForm q{entries};
        long x = static_cast<long>(rng() % 30) + 1;
        if (rng() % 2) x = -x;
        if (oracle::represents_search(longs_of(q), x, 40)) CHECK(represents(q, Rat(x), Field::global()));
    }
}

TEST_CASE("fundamental ideal membership")
{
    CHECK(in_fundamental_power(form_of({1, -1}), 1));
    CHECK(in_fundamental_power(form_of({1, -1}), 2));
    CHECK(is_hyperbolic(form_of({1, -1}), Field::global()));

    DiagonalForm four_ones = form_of({1, 1, 1, 1});
    CHECK(in_fundamental_power(four_ones, 2));
    CHECK_FALSE(is_hyperbolic(four_ones, Field::global()));
    CHECK_FALSE(in_fundamental_power(four_ones, 3));
    CHECK_FALSE(is_isotropic(four_ones, Place::finite(2)));

    DiagonalForm q = form_of({1, -2, 3, -6});
    CHECK(in_fundamental_power(q, 2));
    CHECK_FALSE(in_fundamental_power(q, 3));

    CHECK(in_fundamental_power(DiagonalForm(std::vector<Rat>(8, Rat(1))), 3));
    CHECK_FALSE(in_fundamental_power(form_of({1, 2, 3}), 1));

    // 3-fold Pfister expansions and their sums land in I^3
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 15; ++trial) {
        auto pf3 = [&]() {
            std::vector<Rat> e{Rat(1)};
            for (int j = 0; j < 3; ++j) {
                long s = static_cast<long>(rng() % 10) + 1;
                Rat slot(rng() % 2 ? s : -s);
                std::vector<Rat> next = e;
                for (const Rat& b : e) next.push_back(slot * b);
                e = std::move(next);
            }
            return DiagonalForm(e);
        };
        DiagonalForm a = pf3();
        DiagonalForm b = pf3();
        CHECK(in_fundamental_power(a, 3));
        CHECK(in_fundamental_power(direct_sum(a, b), 3));
        // scaling by a nonsquare knocks a generic 2-fold product out of I^3
        DiagonalForm twofold = tensor(form_of({1, 2}), form_of({1, 3}));
        CHECK(in_fundamental_power(twofold, 2));
        CHECK_FALSE(in_fundamental_power(twofold, 3));
    }
}

TEST_CASE("anisotropic places")
{
    auto places = anisotropic_places(form_of({1, -2, 3, -6}));
    REQUIRE(places.size() == 2);
    CHECK(places[0] == Place::finite(2));
    CHECK(places[1] == Place::finite(3));

    auto p2 = anisotropic_places(form_of({1, 1, 1, 1}));
    REQUIRE(p2.size() == 2);
    CHECK(p2[0] == Place::real());
    CHECK(p2[1] == Place::finite(2));

    CHECK(anisotropic_places(form_of({1, -1, 1})).empty());
    CHECK_THROWS_AS(anisotropic_places(form_of({1, -7})), domain_error);
}

TEST_CASE("isometry invariance of predicates")
{
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 25; ++trial) {
        int rank = 2 + static_cast<int>(rng() % 4);
        std::vector<Rat> entries;
        for (int i = 0; i < rank; ++i) {
            long a = static_cast<long>(rng() % 15) + 1;
            if (rng() % 2) a = -a;
            entries.push_back(Rat(a));
        }
        DiagonalForm q{entries};
        // permute and rescale entries by squares
        std::vector<Rat> other = entries;
        std::shuffle(other.begin(), other.end(), rng);
        for (Rat& e : other) {
            long s = static_cast<long>(rng() % 5) + 1;
            e *= Rat(s * s);
            if (rng() % 3 == 0) e /= Rat(4);
        }
        DiagonalForm r{other};
        CHECK(is_isometric(q, r, Field::global()));
        for (const Place& v :
             {Place::real(), Place::finite(2), Place::finite(3), Place::finite(5), Place::finite(7)}) {
            CHECK(is_isotropic(q, v) == is_isotropic(r, v));
            WittClass wq = witt_decompose(q, Field::at(v));
            WittClass wr = witt_decompose(r, Field::at(v));
            CHECK(wq.witt_index == wr.witt_index);
        }
        long x = static_cast<long>(rng() % 20) + 1;
        CHECK(represents(q, Rat(x), Field::global()) == represents(r, Rat(x), Field::global()));
    }
}

TEST_CASE("canonicalized display form")
{
    DiagonalForm q = form_of({-6, 9, 8});
    DiagonalForm c = canonicalized(q);
    CHECK(c == DiagonalForm({Rat(1), Rat(2), Rat(-6)}));
}
