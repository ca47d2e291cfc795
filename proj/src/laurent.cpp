#include "qflab/laurent.hpp"

#include <algorithm>

namespace qflab {

Laurent::Laurent(long lo, std::vector<Rat> coeffs) : lo_(lo), hi_(lo + static_cast<long>(coeffs.size())), c_(std::move(coeffs)) {}

Laurent Laurent::zero_to(long hi)
{
    Laurent r;
    r.lo_ = hi;
    r.hi_ = hi;
    return r;
}

Laurent Laurent::from_poly(const Poly& p, long hi)
{
    std::vector<Rat> c;
    for (int i = 0; i <= p.degree() && i < hi; ++i) c.push_back(p.coeff(i));
    Laurent r(0, std::move(c));
    r.hi_ = hi;
    r.c_.resize(static_cast<size_t>(std::max(0L, hi - r.lo_)), Rat(0));
    return r;
}

Laurent Laurent::monomial(const Rat& c, long k, long hi)
{
    if (k >= hi) return zero_to(hi);
    Laurent r(k, std::vector<Rat>{c});
    r.hi_ = hi;
    r.c_.resize(static_cast<size_t>(hi - k), Rat(0));
    return r;
}

Rat Laurent::coeff(long k) const
{
    if (k < lo_ || k >= hi_) return Rat(0);
    return c_[static_cast<size_t>(k - lo_)];
}

std::optional<long> Laurent::order() const
{
    for (long k = lo_; k < hi_; ++k)
        if (coeff(k) != 0) return k;
    return std::nullopt;
}

Laurent Laurent::operator+(const Laurent& o) const
{
    long lo = std::min(lo_, o.lo_);
    long hi = std::min(hi_, o.hi_);
    if (hi < lo) hi = lo;
    std::vector<Rat> c(static_cast<size_t>(hi - lo), Rat(0));
    for (long k = lo; k < hi; ++k) c[static_cast<size_t>(k - lo)] = coeff(k) + o.coeff(k);
    return Laurent(lo, std::move(c));
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (o * Rat(-1)); }

Laurent Laurent::operator*(const Rat& s) const
{
    Laurent r = *this;
    for (Rat& a : r.c_) a *= s;
    return r;
}

Laurent Laurent::operator*(const Laurent& o) const
{
    // precision: O(t^hi_a) * (leading t^lo_b) and vice versa
    long hi = std::min(hi_ + o.lo_, o.hi_ + lo_);
    long lo = lo_ + o.lo_;
    if (hi < lo) hi = lo;
    std::vector<Rat> c(static_cast<size_t>(hi - lo), Rat(0));
    for (long i = lo_; i < hi_; ++i) {
        if (coeff(i) == 0) continue;
        for (long j = o.lo_; j < o.hi_ && i + j < hi; ++j) {
            if (i + j < lo) continue;
            c[static_cast<size_t>(i + j - lo)] += coeff(i) * o.coeff(j);
        }
    }
    return Laurent(lo, std::move(c));
}

Laurent Laurent::inverse() const
{
    auto ord = order();
    if (!ord) throw domain_error("Laurent::inverse: series is zero to its precision");
    long k = *ord;
    long len = hi_ - k;
    // unit part u = sum c[k+i] t^i, invert mod t^len
    std::vector<Rat> u(static_cast<size_t>(len));
    for (long i = 0; i < len; ++i) u[static_cast<size_t>(i)] = coeff(k + i);
    std::vector<Rat> w(static_cast<size_t>(len), Rat(0));
    w[0] = Rat(1) / u[0];
    for (long n = 1; n < len; ++n) {
        Rat acc(0);
        for (long j = 1; j <= n; ++j) acc += u[static_cast<size_t>(j)] * w[static_cast<size_t>(n - j)];
        w[static_cast<size_t>(n)] = -acc / u[0];
    }
    return Laurent(-k, std::move(w));
}

Laurent Laurent::pow(long e) const
{
    if (e < 0) return inverse().pow(-e);
    // precision cap mirrors repeated multiplication
    Laurent r = Laurent::monomial(Rat(1), 0, hi_ - lo_ + std::max(0L, lo_ * e) + 1);
    if (e == 0) {
        auto ord = order();
        long base_lo = ord ? *ord : lo_;
        return Laurent::monomial(Rat(1), 0, hi_ - base_lo);
    }
    Laurent acc = *this;
    bool started = false;
    long ebits = e;
    while (ebits > 0) {
        if (ebits & 1) {
            r = started ? r * acc : acc;
            started = true;
        }
        ebits >>= 1;
        if (ebits > 0) acc = acc * acc;
    }
    return r;
}

Laurent Laurent::sqrt_with(const Rat& root) const
{
    auto ord = order();
    if (!ord) throw domain_error("Laurent::sqrt_with: series is zero to its precision");
    long k = *ord;
    if (k % 2 != 0) throw domain_error("Laurent::sqrt_with: odd order");
    if (root * root != coeff(k)) throw domain_error("Laurent::sqrt_with: root^2 != leading coefficient");
    long len = hi_ - k;
    std::vector<Rat> u(static_cast<size_t>(len));
    for (long i = 0; i < len; ++i) u[static_cast<size_t>(i)] = coeff(k + i);
    std::vector<Rat> w(static_cast<size_t>(len), Rat(0));
    w[0] = root;
    for (long n = 1; n < len; ++n) {
        Rat acc(0);
        for (long j = 1; j < n; ++j) acc += w[static_cast<size_t>(j)] * w[static_cast<size_t>(n - j)];
        w[static_cast<size_t>(n)] = (u[static_cast<size_t>(n)] - acc) / (Rat(2) * root);
    }
    return Laurent(k / 2, std::move(w));
}

Laurent eval_poly(const Poly& p, const Laurent& x, long hi)
{
    Laurent r = Laurent::zero_to(hi);
    bool any = false;
    for (int i = p.degree(); i >= 0; --i) {
        if (!any) {
            r = Laurent::monomial(p.coeff(i), 0, hi);
            any = true;
        } else {
            r = r * x + Laurent::monomial(p.coeff(i), 0, hi);
        }
    }
    if (!any) return Laurent::zero_to(hi);
    return r;
}

} // namespace qflab
