#pragma once

#include "qflab/numeric.hpp"
#include "qflab/place.hpp"

#include <vector>

namespace qflab {

// True iff a is a square in the completion Q_v.
// Real: a > 0. Odd p: even valuation and unit part a square mod p.
// p = 2: even valuation and unit part = 1 mod 8.
bool is_local_square(const Rat& a, const Place& v);

// Hilbert symbol (a,b)_v in {+1,-1}: +1 iff z^2 = a x^2 + b y^2 has a
// nontrivial solution over Q_v. Computed by the closed-form case analysis
// on valuations and unit parts; never by search.
int hilbert_symbol(const Rat& a, const Rat& b, const Place& v);

// The exact (finite, even-cardinality) set of places where (a,b)_v = -1.
// Contained in {real, 2} plus the odd primes dividing a or b.
std::vector<Place> hilbert_support(const Rat& a, const Rat& b);

// Candidate places where any local invariant of data supported on the given
// rationals can be nontrivial: real, 2, and the odd primes of the supports.
std::vector<Place> candidate_places(const std::vector<Rat>& values);

} // namespace qflab
