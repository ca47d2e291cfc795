#pragma once

#include "qflab/numeric.hpp"
#include "qflab/poly.hpp"

#include <optional>
#include <vector>

namespace qflab {

// Truncated Laurent series over Q: sum of c[i] t^(lo+i) for i in [0, hi-lo),
// plus O(t^hi). Exact values (polynomials) are injected with an explicit
// working precision.
class Laurent {
public:
    Laurent() : lo_(0), hi_(0) {}
    Laurent(long lo, std::vector<Rat> coeffs);

    static Laurent zero_to(long hi);
    static Laurent from_poly(const Poly& p, long hi);
    // c * t^k known exactly up to precision hi
    static Laurent monomial(const Rat& c, long k, long hi);

    long lo() const { return lo_; }
    long hi() const { return hi_; }
    Rat coeff(long k) const;

    // Order of the first nonzero known coefficient; nullopt if the series is
    // zero to its precision.
    std::optional<long> order() const;

    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    Laurent operator*(const Rat& s) const;

    // Multiplicative inverse; requires a nonzero known leading coefficient.
    Laurent inverse() const;
    Laurent pow(long e) const;   // negative e allowed via inverse

    // Square root with prescribed leading coefficient root: the leading
    // coefficient must equal root^2 and the order must be even.
    Laurent sqrt_with(const Rat& root) const;

private:
    long lo_;
    long hi_;
    std::vector<Rat> c_;
};

// Evaluates p(x) where x is a Laurent series.
Laurent eval_poly(const Poly& p, const Laurent& x, long hi);

} // namespace qflab
