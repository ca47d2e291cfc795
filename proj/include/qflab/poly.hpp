#pragma once

#include "qflab/numeric.hpp"

#include <utility>
#include <vector>

namespace qflab {

// Dense univariate polynomial over Q. coeff(i) is the coefficient of x^i;
// the zero polynomial has degree -1.
class Poly {
public:
    Poly() = default;
    explicit Poly(const Rat& constant);
    explicit Poly(std::vector<Rat> coeffs);

    static Poly x();
    static Poly monomial(const Rat& c, int deg);

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_constant() const { return c_.size() <= 1; }
    Rat coeff(int i) const { return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rat(0); }
    const Rat& lc() const;
    const std::vector<Rat>& coeffs() const { return c_; }

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Rat& s) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    // Total order for use as a map key: by degree, then coefficients.
    bool operator<(const Poly& o) const;

    Poly derivative() const;
    Rat eval(const Rat& t) const;
    Poly monic() const;

    // x^deg * p(1/x)
    Poly reversed() const;
    // p(x + a)
    Poly shifted(const Rat& a) const;

private:
    void trim();
    std::vector<Rat> c_;
};

// Quotient and remainder; o must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& p, const Poly& o);

// Remainder only.
Poly pmod(const Poly& p, const Poly& o);

// Exact quotient; throws if the division is not exact.
Poly exact_div(const Poly& p, const Poly& o);

// Monic gcd over Q (zero if both zero).
Poly poly_gcd(const Poly& a, const Poly& b);

// Resultant over Q.
Rat resultant(const Poly& a, const Poly& b);

bool is_squarefree(const Poly& p);

// Yun decomposition: p = unit * prod factors[i].first ^ factors[i].second,
// factors monic squarefree and pairwise coprime, multiplicities increasing.
struct SquarefreeDecomposition {
    Rat unit;
    std::vector<std::pair<Poly, int>> factors;
};
SquarefreeDecomposition squarefree_decomposition(const Poly& p);

// Full factorization over Q into monic irreducibles.
struct PolyFactors {
    Rat unit;
    std::vector<std::pair<Poly, int>> factors;   // monic irreducible, multiplicity
};
PolyFactors factor_poly(const Poly& p);

// Inverse of a mod m in Q[x]/(m); requires gcd(a, m) = 1.
Poly mod_inverse(const Poly& a, const Poly& m);

} // namespace qflab
