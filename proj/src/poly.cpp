#include "qflab/poly.hpp"

#include <algorithm>

namespace qflab {

Poly::Poly(const Rat& constant)
{
    if (constant != 0) c_.push_back(constant);
}

Poly::Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::x() { return Poly(std::vector<Rat>{Rat(0), Rat(1)}); }

Poly Poly::monomial(const Rat& c, int deg)
{
    if (c == 0) return Poly();
    std::vector<Rat> v(static_cast<size_t>(deg) + 1, Rat(0));
    v.back() = c;
    return Poly(std::move(v));
}

void Poly::trim()
{
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

const Rat& Poly::lc() const
{
    if (c_.empty()) throw domain_error("Poly::lc: zero polynomial");
    return c_.back();
}

Poly Poly::operator-() const
{
    Poly r;
    r.c_.reserve(c_.size());
    for (const Rat& a : c_) r.c_.push_back(-a);
    return r;
}

Poly Poly::operator+(const Poly& o) const
{
    std::vector<Rat> v(std::max(c_.size(), o.c_.size()), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
    return Poly(std::move(v));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const
{
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> v(c_.size() + o.c_.size() - 1, Rat(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(v));
}

Poly Poly::operator*(const Rat& s) const
{
    if (s == 0) return Poly();
    std::vector<Rat> v;
    v.reserve(c_.size());
    for (const Rat& a : c_) v.push_back(a * s);
    return Poly(std::move(v));
}

bool Poly::operator<(const Poly& o) const
{
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

Poly Poly::derivative() const
{
    if (c_.size() <= 1) return Poly();
    std::vector<Rat> v;
    v.reserve(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) v.push_back(c_[i] * Rat(static_cast<long>(i)));
    return Poly(std::move(v));
}

Rat Poly::eval(const Rat& t) const
{
    Rat r(0);
    for (size_t i = c_.size(); i-- > 0;) r = r * t + c_[i];
    return r;
}

Poly Poly::monic() const
{
    if (is_zero()) throw domain_error("Poly::monic: zero polynomial");
    return *this * (Rat(1) / lc());
}

Poly Poly::reversed() const
{
    std::vector<Rat> v(c_.rbegin(), c_.rend());
    return Poly(std::move(v));
}

Poly Poly::shifted(const Rat& a) const
{
    // Horner: p(x + a)
    Poly r;
    Poly lin(std::vector<Rat>{a, Rat(1)});
    for (size_t i = c_.size(); i-- > 0;) r = r * lin + Poly(c_[i]);
    return r;
}

std::pair<Poly, Poly> divmod(const Poly& p, const Poly& o)
{
    if (o.is_zero()) throw domain_error("divmod: division by zero polynomial");
    Poly r = p;
    std::vector<Rat> q(p.degree() >= o.degree() ? static_cast<size_t>(p.degree() - o.degree()) + 1 : 0, Rat(0));
    while (!r.is_zero() && r.degree() >= o.degree()) {
        int k = r.degree() - o.degree();
        Rat c = r.lc() / o.lc();
        q[static_cast<size_t>(k)] = c;
        r = r - Poly::monomial(c, k) * o;
    }
    return {Poly(std::move(q)), r};
}

Poly pmod(const Poly& p, const Poly& o) { return divmod(p, o).second; }

Poly exact_div(const Poly& p, const Poly& o)
{
    auto [q, r] = divmod(p, o);
    if (!r.is_zero()) throw domain_error("exact_div: division not exact");
    return q;
}

Poly poly_gcd(const Poly& a, const Poly& b)
{
    Poly f = a, g = b;
    while (!g.is_zero()) {
        Poly r = pmod(f, g);
        f = g;
        g = r;
        if (!f.is_zero()) f = f.monic();   // keeps coefficient growth tame
    }
    if (f.is_zero()) return f;
    return f.monic();
}

Rat resultant(const Poly& a, const Poly& b)
{
    if (a.is_zero() || b.is_zero()) return Rat(0);
    if (a.degree() == 0) {
        Rat r(1);
        for (int i = 0; i < b.degree(); ++i) r *= a.lc();
        return r;
    }
    if (b.degree() == 0) {
        Rat r(1);
        for (int i = 0; i < a.degree(); ++i) r *= b.lc();
        return r;
    }
    if (a.degree() < b.degree()) {
        Rat s = (a.degree() % 2 != 0 && b.degree() % 2 != 0) ? Rat(-1) : Rat(1);
        return s * resultant(b, a);
    }
    Poly r = pmod(a, b);
    if (r.is_zero()) return Rat(0);
    Rat sign_flip = (a.degree() % 2 != 0 && b.degree() % 2 != 0) ? Rat(-1) : Rat(1);
    Rat lcpow(1);
    for (int i = 0; i < a.degree() - r.degree(); ++i) lcpow *= b.lc();
    return sign_flip * lcpow * resultant(b, r);
}

bool is_squarefree(const Poly& p)
{
    if (p.is_zero()) return false;
    if (p.degree() <= 1) return true;
    return poly_gcd(p, p.derivative()).degree() == 0;
}

SquarefreeDecomposition squarefree_decomposition(const Poly& p)
{
    if (p.is_zero()) throw domain_error("squarefree_decomposition: zero polynomial");
    SquarefreeDecomposition out;
    out.unit = p.lc();
    Poly f = p.monic();
    if (f.degree() == 0) return out;
    Poly fp = f.derivative();
    Poly a = poly_gcd(f, fp);
    Poly b = exact_div(f, a);
    Poly c = exact_div(fp, a);
    Poly d = c - b.derivative();
    int i = 1;
    while (b.degree() > 0) {
        Poly ai = poly_gcd(b, d);
        if (ai.degree() > 0) out.factors.emplace_back(ai, i);
        b = exact_div(b, ai);
        c = exact_div(d, ai);
        d = c - b.derivative();
        ++i;
    }
    return out;
}

Poly mod_inverse(const Poly& a, const Poly& m)
{
    // extended Euclid in Q[x]
    Poly r0 = m, r1 = pmod(a, m);
    Poly t0, t1(Rat(1));
    while (!r1.is_zero()) {
        auto [q, r2] = divmod(r0, r1);
        Poly t2 = t0 - q * t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if (r0.degree() != 0) throw domain_error("mod_inverse: not invertible");
    return pmod(t0 * (Rat(1) / r0.lc()), m);
}

} // namespace qflab
