#pragma once

#include "qflab/curve.hpp"
#include "qflab/form.hpp"
#include "qflab/pfister.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace qflab {

// Base of the fibration: the projective line or a hyperelliptic curve.
struct ProjectiveLine {
    bool operator==(const ProjectiveLine&) const { return true; }
};
using BaseCurve = std::variant<ProjectiveLine, HyperellipticCurve>;

// Constant generic fiber q (rank 3 or 4) over the base curve.
struct FibrationInstance {
    DiagonalForm q;
    BaseCurve base;

    FibrationInstance(DiagonalForm form, BaseCurve c);
    bool over_p1() const { return std::holds_alternative<ProjectiveLine>(base); }
    const HyperellipticCurve& curve() const { return std::get<HyperellipticCurve>(base); }
};

// q(vec) = mu * g as an exact identity in the function field.
struct RepresentationWitness {
    std::vector<FunctionElement> vec;
    Rat mu{1};
};

// A rational point of the projective line: x = x0 or the point at infinity.
struct P1Point {
    bool at_infinity = false;
    Rat x0;
};

// Points at which the second residue of q (x) <1,-mu g> is anisotropic.
struct ResidueObstruction {
    std::vector<ClosedPoint> points;      // curve base
    std::vector<P1Point> p1_points;       // projective-line base
};

// A cited fact that is consumed, never proved here.
struct ExternalFact {
    std::string citation;
    bool asserts_membership = false;   // membership vs non-membership of the class
};

using Certificate = std::variant<RepresentationWitness, ResidueObstruction, ExternalFact>;

std::string certificate_kind(const Certificate& c);

enum class LocalVerdict { Trivial, Nontrivial, Unknown };
std::string verdict_to_string(LocalVerdict v);

struct ChowClassCandidate {
    FunctionElement g;
    DeltaResult provenance = DeltaResult::Unknown;
    std::map<Place, Certificate> local_certificates;
};

// Computes the delta-image provenance of g on the instance's base.
ChowClassCandidate make_candidate(const FibrationInstance& inst, const FunctionElement& g);

struct PlaceVerdict {
    Place place;
    LocalVerdict verdict;
    std::string certificate;   // "none", "representation-witness", "residue-obstruction", "external-fact"
    bool machine_verified;
    std::string note;
};

struct ObstructionReport {
    std::string instance_form;
    std::string instance_curve;
    std::string candidate;
    std::vector<PlaceVerdict> places;
    std::string other_places;
    std::string global_verdict;
    std::vector<std::string> theorem_citations;
    std::vector<std::string> assumed_facts;
    std::vector<std::string> verified_steps;

    std::string to_text() const;
    std::string to_json() const;   // fixed field names and ordering
};

// Per-place triviality of the candidate class. Trivial when the whole local
// group vanishes (q isotropic over Q_v) or a representation witness
// verifies; Nontrivial only with a verified residue obstruction or a
// declared external fact.
PlaceVerdict local_triviality(const FibrationInstance& inst, const ChowClassCandidate& cand, const Place& v);

// Residues of the odd-valuation entries at a rational point; empty result
// means no second-residue obstruction at P.
std::vector<Rat> second_residue(const HyperellipticCurve& C, const std::vector<FunctionElement>& entries,
                                const ClosedPoint& P);

// Checks that for each sign of the constant mu some named point has an
// anisotropic second residue of q (x) <1, -mu g>; both parity classes must
// be covered or the certificate is rejected.
bool verify_nonmembership_certificate(const DiagonalForm& q, const FunctionElement& g,
                                      const ResidueObstruction& cert, const HyperellipticCurve& C,
                                      const Field& field);

// Same check over the rational function field Q(t).
std::vector<Rat> second_residue_p1(const std::vector<RatFn>& entries, const P1Point& P);
bool verify_nonmembership_certificate_p1(const DiagonalForm& q, const RatFn& g,
                                         const std::vector<P1Point>& points, const Field& field);

// Bounded search for a function-field representation q(w) = mu g.
std::optional<RepresentationWitness> find_function_witness(const FibrationInstance& inst, const DiagonalForm& q,
                                                           const FunctionElement& g);

// Executes the proof steps of the injectivity theorem on the instance,
// logging which are machine-verified and which are cited.
ObstructionReport injectivity_pipeline(const FibrationInstance& inst, const ChowClassCandidate& cand);

// The fixed counterexample report: q = <1,-2,3,-6> over y^2 = -x(x+2)(x+3),
// candidate x; real-restricted map not injective.
ObstructionReport prop33_report();

} // namespace qflab
