#pragma once

#include "qflab/local.hpp"
#include "qflab/numeric.hpp"
#include "qflab/place.hpp"

#include <map>
#include <optional>
#include <vector>

namespace qflab {

// Nonsingular diagonal quadratic form <a_1,...,a_n> over Q.
class DiagonalForm {
public:
    explicit DiagonalForm(std::vector<Rat> entries);

    const std::vector<Rat>& entries() const { return entries_; }
    int rank() const { return static_cast<int>(entries_.size()); }

    bool operator==(const DiagonalForm& o) const { return entries_ == o.entries_; }

private:
    std::vector<Rat> entries_;
};

// Classification data: rank, discriminant square class, Hasse symbols
// (product of (a_i,a_j)_v over i < j; only the -1 places are stored),
// and the real signature.
struct FormInvariants {
    int rank = 0;
    SquareClass disc{Int(1)};
    std::map<Place, int> hasse_minus;   // places with Hasse invariant -1
    int signature = 0;

    int hasse_at(const Place& v) const { return hasse_minus.contains(v) ? -1 : 1; }
    bool operator==(const FormInvariants&) const = default;
};

struct WittClass {
    std::optional<DiagonalForm> anisotropic_kernel;   // nullopt = hyperbolic
    int witt_index = 0;

    int kernel_rank() const { return anisotropic_kernel ? anisotropic_kernel->rank() : 0; }
};

FormInvariants invariants(const DiagonalForm& q);

DiagonalForm direct_sum(const DiagonalForm& q, const DiagonalForm& r);
DiagonalForm tensor(const DiagonalForm& q, const DiagonalForm& r);
DiagonalForm scale(const Rat& a, const DiagonalForm& q);

// Entries sorted by square-class representative; display helper only.
DiagonalForm canonicalized(const DiagonalForm& q);

bool is_isotropic(const DiagonalForm& q, const Place& v);
bool is_isotropic_global(const DiagonalForm& q);
bool is_isotropic(const DiagonalForm& q, const Field& f);

bool is_isometric(const DiagonalForm& q, const DiagonalForm& r, const Field& f);

bool is_hyperbolic(const DiagonalForm& q, const Field& f);

WittClass witt_decompose(const DiagonalForm& q, const Field& f);

// True iff q represents x over the field: q _|_ <-x> isotropic.
bool represents(const DiagonalForm& q, const Rat& x, const Field& f);

// Membership of the Witt class in I^n for n in {1,2,3}.
// n=1: even rank; n=2: adds trivial signed discriminant; n=3: adds
// hyperbolicity at every finite place and signature = 0 mod 8.
bool in_fundamental_power(const DiagonalForm& q, int n);

// Exact set of places where q is anisotropic. Requires rank >= 3 (rank <= 2
// forms can be anisotropic at infinitely many places).
std::vector<Place> anisotropic_places(const DiagonalForm& q);

} // namespace qflab
