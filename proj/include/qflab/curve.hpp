#pragma once

#include "qflab/form.hpp"
#include "qflab/laurent.hpp"
#include "qflab/poly.hpp"

#include <map>
#include <optional>
#include <vector>

namespace qflab {

// Rational function in x over Q, normalized: monic denominator coprime to
// the numerator; 0 is 0/1.
struct RatFn {
    Poly num;
    Poly den{Rat(1)};

    RatFn() = default;
    explicit RatFn(Poly n) : num(std::move(n)) {}
    RatFn(Poly n, Poly d);

    bool is_zero() const { return num.is_zero(); }
    bool operator==(const RatFn& o) const { return num == o.num && den == o.den; }

    RatFn operator+(const RatFn& o) const;
    RatFn operator-(const RatFn& o) const;
    RatFn operator*(const RatFn& o) const;
    RatFn operator/(const RatFn& o) const;
    RatFn operator-() const;
};

// The hyperelliptic (affine) model y^2 = f(x), f squarefree of degree >= 3.
class HyperellipticCurve {
public:
    explicit HyperellipticCurve(Poly f);

    const Poly& f() const { return f_; }
    int degree() const { return f_.degree(); }
    int genus() const { return (f_.degree() - 1) / 2; }

    bool operator==(const HyperellipticCurve& o) const { return f_ == o.f_; }

private:
    Poly f_;
};

// u(x) + v(x) y as an element of Q(C); not both zero when used as a function.
struct FunctionElement {
    RatFn u, v;

    bool is_zero() const { return u.is_zero() && v.is_zero(); }
    bool is_constant() const;
    bool operator==(const FunctionElement& o) const { return u == o.u && v == o.v; }
};

FunctionElement fe_constant(const Rat& c);
FunctionElement fe_from_x(RatFn u);
FunctionElement fe_add(const FunctionElement& a, const FunctionElement& b);
FunctionElement fe_sub(const FunctionElement& a, const FunctionElement& b);
FunctionElement fe_neg(const FunctionElement& a);
FunctionElement fe_mul(const HyperellipticCurve& C, const FunctionElement& a, const FunctionElement& b);
FunctionElement fe_conj(const FunctionElement& a);
RatFn fe_norm(const HyperellipticCurve& C, const FunctionElement& a);   // u^2 - f v^2
FunctionElement fe_inverse(const HyperellipticCurve& C, const FunctionElement& a);

// A closed point of the smooth projective model.
class ClosedPoint {
public:
    enum class Branch { Ramified, Split, Inert };

    static ClosedPoint finite(Poly minpoly, Branch b, Poly y_rep = Poly());
    static ClosedPoint infinite_ramified();           // deg f odd
    static ClosedPoint infinite_split(int sgn);       // deg f even, lc a square; sgn = +-1
    static ClosedPoint infinite_inert();              // deg f even, lc not a square

    bool is_infinite() const { return infinite_; }
    Branch branch() const { return branch_; }
    const Poly& minpoly() const;                      // finite points only
    const Poly& y_rep() const { return y_rep_; }      // finite split points
    int inf_sign() const { return inf_sign_; }
    int residue_degree() const { return residue_degree_; }
    bool is_rational() const { return residue_degree_ == 1; }

    // x and y coordinates for rational finite points
    Rat x0() const;
    Rat y0() const;

    bool operator==(const ClosedPoint& o) const;
    bool operator<(const ClosedPoint& o) const;

private:
    ClosedPoint() = default;
    bool infinite_ = false;
    Branch branch_ = Branch::Ramified;
    Poly minpoly_;
    Poly y_rep_;
    int inf_sign_ = 0;
    int residue_degree_ = 1;
};

class Divisor {
public:
    void add(const ClosedPoint& P, long mult);
    long multiplicity(const ClosedPoint& P) const;
    const std::map<ClosedPoint, long>& support() const { return mult_; }
    long degree() const;   // sum of mult * residue_degree
    bool operator==(const Divisor& o) const { return mult_ == o.mult_; }
    Divisor operator+(const Divisor& o) const;
    Divisor operator-(const Divisor& o) const;
    bool all_even() const;

private:
    std::map<ClosedPoint, long> mult_;
};

// Exact principal divisor of g on C; throws on the zero function. The result
// always has degree 0.
Divisor principal_divisor(const HyperellipticCurve& C, const FunctionElement& g);

// Splitting of the place r of Q(x) (monic irreducible, r not dividing f) in
// Q(C): y-coordinate representative if f is a square mod r, nullopt if inert.
std::optional<Poly> sqrt_mod_minpoly(const Poly& f, const Poly& r);

enum class FiberIndex { One, Two, Unknown };

// Index of the degree map on the fiber quadric over k(P) by Springer's
// theorem; decided only over residue degree 1 (k(P) = Q).
FiberIndex fiber_index(const DiagonalForm& q, const ClosedPoint& P);

enum class DeltaResult { InImage, NotInImage, Unknown };

// Whether the class of g lies in the image of delta: all divisor
// multiplicities vanish in Z/(fiber index).
DeltaResult delta_image_test(const DiagonalForm& q, const FunctionElement& g, const HyperellipticCurve& C);

enum class DnResult { Yes, Unknown };

// Certified membership of g in the dn-subgroup (unit times norm at every
// closed point); never claims a negative.
DnResult dn_subgroup_test(const DiagonalForm& q, const FunctionElement& g, const HyperellipticCurve& C);

// Valuation and leading (unit-part) coefficient of g at a rational point.
struct LocalLeading {
    long valuation;
    Rat leading;
};
LocalLeading local_leading(const HyperellipticCurve& C, const ClosedPoint& P, const FunctionElement& g);

} // namespace qflab
