#pragma once

#include "qflab/form.hpp"

#include <optional>
#include <string>

namespace qflab {

// <<a_1,...,a_n>> = <1,a_1> (x) ... (x) <1,a_n>.
class PfisterForm {
public:
    explicit PfisterForm(std::vector<Rat> slots);

    const std::vector<Rat>& slots() const { return slots_; }
    int fold() const { return static_cast<int>(slots_.size()); }

private:
    std::vector<Rat> slots_;
};

// Iterated tensor expansion; rank 2^n, first entry 1.
DiagonalForm expand(const PfisterForm& p);

// True iff q' is a subform of a scalar multiple of expand(p) with
// rank(q') >= 2^(n-1)+1. Supported for n <= 3; the scalar can be taken
// to be the first entry of q' (Pfister forms are round), so the test is a
// single Witt-index computation.
bool is_pfister_neighbor(const DiagonalForm& qp, const PfisterForm& p);

struct NormMembershipVerdict {
    enum class Answer { Member, NonMember, Unknown };
    Answer answer = Answer::Unknown;
    std::string reason;
    std::optional<std::vector<Rat>> witness;   // vector w with q(w) = x

    bool is_member() const { return answer == Answer::Member; }
};

// Membership of x in N_q over the field, for q a Pfister form or a certified
// neighbor of the supplied ambient Pfister form. N_q = { x : q (x) <1,-x>
// isotropic }; isotropy and hyperbolicity are both checked. Forms that are
// neither isotropic, Pfister, nor certified neighbors yield Unknown.
NormMembershipVerdict norm_member(const DiagonalForm& q, const Rat& x, const Field& field,
                                  const std::optional<PfisterForm>& ambient = std::nullopt);

// Property check for the norm principle: all pairwise products of represented
// samples must again be members.
bool norm_group_closure_check(const PfisterForm& p, const std::vector<Rat>& samples, const Field& field);

// Quaternion algebra (a,b): i^2 = a, j^2 = b, ij = -ji.
class QuaternionAlgebra {
public:
    QuaternionAlgebra(Rat a, Rat b);
    const Rat& a() const { return a_; }
    const Rat& b() const { return b_; }

    // Norm form <1,-a,-b,ab>; its nonzero values are the reduced norms.
    DiagonalForm norm_form() const;

private:
    Rat a_, b_;
};

// Exact set of places where (a,b)_v = -1; always of even cardinality.
std::vector<Place> ramified_places(const QuaternionAlgebra& D);

// Hasse-Schilling-Maass over Q: x is a reduced norm iff x > 0 whenever the
// real place ramifies.
bool reduced_norm_member(const QuaternionAlgebra& D, const Rat& x);

struct CollapseResult {
    DiagonalForm form;
    bool extension_trivial;   // d already a square in the field; L_w = Q_v
};

// Rewrites q modulo squares of Q_v(sqrt(d)): entries whose square class
// contains d drop that factor. When d is already a local (or global) square
// the form is returned unchanged.
CollapseResult adjoin_sqrt_collapse(const DiagonalForm& q, const Rat& d, const Field& field);

// Bounded search for w with q(w) = x over Q; used to attach witnesses.
std::optional<std::vector<Rat>> find_representation(const DiagonalForm& q, const Rat& x, long box);

} // namespace qflab
