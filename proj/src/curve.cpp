#include "qflab/curve.hpp"

#include <algorithm>

namespace qflab {

// ---- rational functions -------------------------------------------------

RatFn::RatFn(Poly n, Poly d)
{
    if (d.is_zero()) throw domain_error("RatFn: zero denominator");
    if (n.is_zero()) {
        num = Poly();
        den = Poly(Rat(1));
        return;
    }
    Poly g = poly_gcd(n, d);
    n = exact_div(n, g);
    d = exact_div(d, g);
    num = n * (Rat(1) / d.lc());
    den = d.monic();
}

RatFn RatFn::operator+(const RatFn& o) const { return RatFn(num * o.den + o.num * den, den * o.den); }
RatFn RatFn::operator-(const RatFn& o) const { return RatFn(num * o.den - o.num * den, den * o.den); }
RatFn RatFn::operator*(const RatFn& o) const { return RatFn(num * o.num, den * o.den); }
RatFn RatFn::operator/(const RatFn& o) const
{
    if (o.is_zero()) throw domain_error("RatFn: division by zero");
    return RatFn(num * o.den, den * o.num);
}
RatFn RatFn::operator-() const
{
    RatFn r = *this;
    r.num = -r.num;
    return r;
}

// ---- curve --------------------------------------------------------------

HyperellipticCurve::HyperellipticCurve(Poly f) : f_(std::move(f))
{
    if (f_.degree() < 3) throw domain_error("HyperellipticCurve: deg f must be >= 3");
    if (!is_squarefree(f_)) throw domain_error("HyperellipticCurve: f must be squarefree");
}

// ---- function elements --------------------------------------------------

bool FunctionElement::is_constant() const
{
    return v.is_zero() && u.den.degree() == 0 && u.num.degree() <= 0;
}

FunctionElement fe_constant(const Rat& c) { return FunctionElement{RatFn(Poly(c)), RatFn()}; }

FunctionElement fe_from_x(RatFn u) { return FunctionElement{std::move(u), RatFn()}; }

FunctionElement fe_add(const FunctionElement& a, const FunctionElement& b)
{
    return FunctionElement{a.u + b.u, a.v + b.v};
}

FunctionElement fe_sub(const FunctionElement& a, const FunctionElement& b)
{
    return FunctionElement{a.u - b.u, a.v - b.v};
}

FunctionElement fe_neg(const FunctionElement& a) { return FunctionElement{-a.u, -a.v}; }

FunctionElement fe_mul(const HyperellipticCurve& C, const FunctionElement& a, const FunctionElement& b)
{
    RatFn f{C.f()};
    return FunctionElement{a.u * b.u + a.v * b.v * f, a.u * b.v + a.v * b.u};
}

FunctionElement fe_conj(const FunctionElement& a) { return FunctionElement{a.u, -a.v}; }

RatFn fe_norm(const HyperellipticCurve& C, const FunctionElement& a)
{
    return a.u * a.u - a.v * a.v * RatFn{C.f()};
}

FunctionElement fe_inverse(const HyperellipticCurve& C, const FunctionElement& a)
{
    if (a.is_zero()) throw domain_error("fe_inverse: zero function");
    RatFn n = fe_norm(C, a);
    return FunctionElement{a.u / n, -a.v / n};
}

// ---- closed points ------------------------------------------------------

ClosedPoint ClosedPoint::finite(Poly minpoly, Branch b, Poly y_rep)
{
    ClosedPoint P;
    P.infinite_ = false;
    P.branch_ = b;
    P.minpoly_ = minpoly.monic();
    P.y_rep_ = std::move(y_rep);
    int m = P.minpoly_.degree();
    if (m < 1) throw domain_error("ClosedPoint: constant minimal polynomial");
    P.residue_degree_ = (b == Branch::Inert) ? 2 * m : m;
    return P;
}

ClosedPoint ClosedPoint::infinite_ramified()
{
    ClosedPoint P;
    P.infinite_ = true;
    P.branch_ = Branch::Ramified;
    P.residue_degree_ = 1;
    return P;
}

ClosedPoint ClosedPoint::infinite_split(int sgn)
{
    ClosedPoint P;
    P.infinite_ = true;
    P.branch_ = Branch::Split;
    P.inf_sign_ = sgn >= 0 ? 1 : -1;
    P.residue_degree_ = 1;
    return P;
}

ClosedPoint ClosedPoint::infinite_inert()
{
    ClosedPoint P;
    P.infinite_ = true;
    P.branch_ = Branch::Inert;
    P.residue_degree_ = 2;
    return P;
}

const Poly& ClosedPoint::minpoly() const
{
    if (infinite_) throw domain_error("ClosedPoint::minpoly: infinite point");
    return minpoly_;
}

Rat ClosedPoint::x0() const
{
    if (infinite_ || minpoly_.degree() != 1) throw domain_error("ClosedPoint::x0: not a rational finite point");
    return -minpoly_.coeff(0);
}

Rat ClosedPoint::y0() const
{
    if (infinite_ || minpoly_.degree() != 1) throw domain_error("ClosedPoint::y0: not a rational finite point");
    if (branch_ == Branch::Ramified) return Rat(0);
    return y_rep_.coeff(0);
}

bool ClosedPoint::operator==(const ClosedPoint& o) const
{
    return infinite_ == o.infinite_ && branch_ == o.branch_ && minpoly_ == o.minpoly_ && y_rep_ == o.y_rep_ &&
           inf_sign_ == o.inf_sign_;
}

bool ClosedPoint::operator<(const ClosedPoint& o) const
{
    if (infinite_ != o.infinite_) return !infinite_;   // finite points first
    if (!(minpoly_ == o.minpoly_)) return minpoly_ < o.minpoly_;
    if (branch_ != o.branch_) return static_cast<int>(branch_) < static_cast<int>(o.branch_);
    if (!(y_rep_ == o.y_rep_)) return y_rep_ < o.y_rep_;
    return inf_sign_ > o.inf_sign_;   // (inf+) before (inf-)
}

// ---- divisors -----------------------------------------------------------

void Divisor::add(const ClosedPoint& P, long mult)
{
    if (mult == 0) return;
    long& m = mult_[P];
    m += mult;
    if (m == 0) mult_.erase(P);
}

long Divisor::multiplicity(const ClosedPoint& P) const
{
    auto it = mult_.find(P);
    return it == mult_.end() ? 0 : it->second;
}

long Divisor::degree() const
{
    long d = 0;
    for (const auto& [P, m] : mult_) d += m * P.residue_degree();
    return d;
}

Divisor Divisor::operator+(const Divisor& o) const
{
    Divisor r = *this;
    for (const auto& [P, m] : o.mult_) r.add(P, m);
    return r;
}

Divisor Divisor::operator-(const Divisor& o) const
{
    Divisor r = *this;
    for (const auto& [P, m] : o.mult_) r.add(P, -m);
    return r;
}

bool Divisor::all_even() const
{
    for (const auto& [P, m] : mult_)
        if (m % 2 != 0) return false;
    return true;
}

// ---- splitting of x-line places -----------------------------------------

namespace {

Rat sqrt_rat(const Rat& x) { return Rat(exact_sqrt(num(x)), exact_sqrt(den(x))); }

Poly lagrange_interpolate(const std::vector<std::pair<Rat, Rat>>& pts)
{
    Poly acc;
    for (size_t i = 0; i < pts.size(); ++i) {
        Poly term(Rat(1));
        Rat denom(1);
        for (size_t j = 0; j < pts.size(); ++j) {
            if (i == j) continue;
            term = term * Poly(std::vector<Rat>{-pts[j].first, Rat(1)});
            denom *= pts[i].first - pts[j].first;
        }
        acc = acc + term * (pts[i].second / denom);
    }
    return acc;
}

} // namespace

std::optional<Poly> sqrt_mod_minpoly(const Poly& f, const Poly& r)
{
    int m = r.degree();
    if (m < 1) throw domain_error("sqrt_mod_minpoly: constant modulus");
    if (m == 1) {
        Rat x0 = -r.coeff(0) / r.lc();
        Rat fb = f.eval(x0);
        if (fb == 0) throw domain_error("sqrt_mod_minpoly: r divides f");
        if (!is_square_rat(fb)) return std::nullopt;
        return Poly(sqrt_rat(fb));
    }
    Poly fbar = pmod(f, r);
    if (fbar.is_zero()) throw domain_error("sqrt_mod_minpoly: r divides f");
    // Trager: factor y^2 - fbar over Q[x]/(r) through norms to Q[T]
    long lambda_bound = 4L * m * m + 4;
    for (long lambda = 0; lambda <= lambda_bound; ++lambda) {
        // N(T) = Res_x(r(x), (T - lambda x)^2 - f(x)), by interpolation
        std::vector<std::pair<Rat, Rat>> pts;
        for (long j = 0; j <= 2 * m; ++j) {
            Rat tj(j);
            Poly lin(std::vector<Rat>{tj, Rat(-lambda)});
            pts.emplace_back(tj, resultant(r, lin * lin - f));
        }
        Poly N = lagrange_interpolate(pts);
        if (N.degree() != 2 * m || !is_squarefree(N)) continue;
        Poly c0 = pmod(Poly(std::vector<Rat>{Rat(0), Rat(lambda)}), r);   // lambda*x mod r
        for (const auto& [Q, mult] : factor_poly(N).factors) {
            (void)mult;
            // (a, b) = Q(y + lambda x) reduced mod (y^2 - fbar, r)
            Poly a, b;
            for (int i = Q.degree(); i >= 0; --i) {
                Poly na = pmod(a * c0 + b * fbar, r);
                Poly nb = pmod(a + b * c0, r);
                a = na + Poly(Q.coeff(i));
                b = nb;
            }
            if (b.is_zero()) continue;
            Poly y0 = pmod(-(a * mod_inverse(b, r)), r);
            if (pmod(y0 * y0 - fbar, r).is_zero()) return y0;
        }
        return std::nullopt;   // squarefree norm, no root: inert
    }
    throw std::logic_error("sqrt_mod_minpoly: no squarefree norm found");
}

// ---- local expansions ---------------------------------------------------

namespace {

struct Expansion {
    Laurent x, y;
};

Laurent eval_ratfn(const RatFn& r, const Laurent& x, long prec)
{
    Laurent n = eval_poly(r.num, x, prec);
    Laurent d = eval_poly(r.den, x, prec);
    return n * d.inverse();
}

// solve F(x) = t^2 with x(0) = x0, F'(x0) != 0
Laurent newton_solve(const Poly& F, const Rat& x0, long prec)
{
    Laurent t2 = Laurent::monomial(Rat(1), 2, prec);
    Laurent x = Laurent::monomial(x0, 0, prec);
    Poly Fd = F.derivative();
    long steps = 3;
    for (long known = 1; known < prec; known *= 2) ++steps;
    for (long i = 0; i < steps; ++i) {
        Laurent corr = (eval_poly(F, x, prec) - t2) * eval_poly(Fd, x, prec).inverse();
        x = x - corr;
    }
    return x;
}

Expansion make_expansion(const HyperellipticCurve& C, const ClosedPoint& P, long prec)
{
    if (!P.is_rational()) throw domain_error("make_expansion: point has residue degree > 1");
    const Poly& f = C.f();
    int d = C.degree();
    if (!P.is_infinite()) {
        Rat x0 = P.x0();
        if (P.branch() == ClosedPoint::Branch::Ramified) {
            Laurent x = newton_solve(f, x0, prec + 4);
            Laurent y = Laurent::monomial(Rat(1), 1, prec + 4);
            return {x, y};
        }
        Laurent x = Laurent::monomial(x0, 0, prec + 4) + Laurent::monomial(Rat(1), 1, prec + 4);
        Laurent y = eval_poly(f, x, prec + 4).sqrt_with(P.y0());
        return {x, y};
    }
    if (P.branch() == ClosedPoint::Branch::Ramified) {
        // chart x = 1/s, y = w/s^h, w^2 = s^(d+1) f(1/s), uniformizer t = w
        int h = (d + 1) / 2;
        long pr = prec + 2 * h + 8;
        Poly ftilde = Poly::monomial(Rat(1), 1) * f.reversed();
        Laurent s = newton_solve(ftilde, Rat(0), pr);
        Laurent sinv = s.inverse();
        Laurent y = Laurent::monomial(Rat(1), 1, pr) * sinv.pow(h);
        return {sinv, y};
    }
    if (P.branch() == ClosedPoint::Branch::Split) {
        // chart x = 1/t, y = w/t^h, w^2 = t^d f(1/t), w(0) = sign * sqrt(lc f)
        int h = d / 2;
        long pr = prec + 2 * h + 8;
        Rat lam = sqrt_rat(Rat(f.lc()));
        if (P.inf_sign() < 0) lam = -lam;
        Laurent w = Laurent::from_poly(f.reversed(), pr).sqrt_with(lam);
        Laurent x = Laurent::monomial(Rat(1), -1, pr);
        Laurent y = w * Laurent::monomial(Rat(1), -h, pr);
        return {x, y};
    }
    throw domain_error("make_expansion: inert infinite point");
}

Laurent eval_function(const HyperellipticCurve& C, const FunctionElement& g, const Expansion& E, long prec)
{
    (void)C;
    Laurent val = Laurent::zero_to(prec);
    if (!g.u.is_zero()) val = val + eval_ratfn(g.u, E.x, prec);
    if (!g.v.is_zero()) val = val + eval_ratfn(g.v, E.x, prec) * E.y;
    return val;
}

// Exact t-order at infinity of the norm U(1/t)^2 - f(1/t) V(1/t)^2.
long infinity_norm_order(const HyperellipticCurve& C, const Poly& U, const Poly& V)
{
    long d = C.degree();
    long DU = U.is_zero() ? 0 : U.degree();
    long DV = V.is_zero() ? 0 : V.degree();
    long K = std::max(2 * DU, 2 * DV + d);
    Poly A;
    if (!U.is_zero()) A = A + U.reversed() * U.reversed() * Poly::monomial(Rat(1), static_cast<int>(K - 2 * DU));
    if (!V.is_zero())
        A = A - C.f().reversed() * V.reversed() * V.reversed() * Poly::monomial(Rat(1), static_cast<int>(K - 2 * DV - d));
    if (A.is_zero()) throw std::logic_error("infinity_norm_order: zero norm");
    long ord = 0;
    while (A.coeff(static_cast<int>(ord)) == 0) ++ord;
    return ord - K;
}

void add_infinity_part(const HyperellipticCurve& C, const Poly& U, const Poly& V, long sgn, Divisor& div)
{
    int d = C.degree();
    long vtN = infinity_norm_order(C, U, V);
    if (d % 2 != 0) {
        div.add(ClosedPoint::infinite_ramified(), sgn * vtN);
        return;
    }
    if (!is_square_rat(Rat(C.f().lc()))) {
        if (vtN % 2 != 0) throw std::logic_error("add_infinity_part: odd norm order at an inert place");
        div.add(ClosedPoint::infinite_inert(), sgn * (vtN / 2));
        return;
    }
    // two rational branches at infinity; expand both
    FunctionElement g{RatFn(U), RatFn(V)};
    long base = std::labs(vtN) + 2 * (std::max(0, U.degree()) + std::max(0, V.degree())) + 2 * d + 8;
    for (int attempt = 0; attempt < 5; ++attempt) {
        long prec = base << attempt;
        auto op = eval_function(C, g, make_expansion(C, ClosedPoint::infinite_split(+1), prec), prec).order();
        auto om = eval_function(C, g, make_expansion(C, ClosedPoint::infinite_split(-1), prec), prec).order();
        if (op && om) {
            if (*op + *om != vtN)
                throw std::logic_error("add_infinity_part: branch orders do not sum to the norm order");
            div.add(ClosedPoint::infinite_split(+1), sgn * *op);
            div.add(ClosedPoint::infinite_split(-1), sgn * *om);
            return;
        }
    }
    throw std::logic_error("add_infinity_part: series precision exhausted");
}

// Pullback of the finite place r of Q(x), multiplicity e.
void add_place_pullback(const HyperellipticCurve& C, const Poly& r, long e, Divisor& div)
{
    if (pmod(C.f(), r).is_zero()) {
        div.add(ClosedPoint::finite(r, ClosedPoint::Branch::Ramified), 2 * e);
        return;
    }
    if (auto s = sqrt_mod_minpoly(C.f(), r)) {
        div.add(ClosedPoint::finite(r, ClosedPoint::Branch::Split, *s), e);
        div.add(ClosedPoint::finite(r, ClosedPoint::Branch::Split, pmod(-*s, r)), e);
        return;
    }
    div.add(ClosedPoint::finite(r, ClosedPoint::Branch::Inert), e);
}

// Divisor of the integral function U + V y (finite and infinite part).
void add_polynomial_part(const HyperellipticCurve& C, const Poly& U, const Poly& V, long sgn, Divisor& div)
{
    if (U.is_zero() && V.is_zero()) throw domain_error("add_polynomial_part: zero function");
    if (V.is_zero()) {
        if (U.degree() > 0)
            for (const auto& [r, e] : factor_poly(U).factors) add_place_pullback(C, r, sgn * e, div);
    } else {
        Poly c = poly_gcd(U, V);
        Poly U1 = exact_div(U, c);
        Poly V1 = exact_div(V, c);
        if (c.degree() > 0)
            for (const auto& [r, e] : factor_poly(c).factors) add_place_pullback(C, r, sgn * e, div);
        // zeros of U1 + V1 y lie over factors of the norm U1^2 - f V1^2;
        // over each factor prime to f the branch is y = -U1/V1
        Poly R = U1 * U1 - C.f() * V1 * V1;
        for (const auto& [r, e] : factor_poly(R).factors) {
            if (pmod(C.f(), r).is_zero()) {
                div.add(ClosedPoint::finite(r, ClosedPoint::Branch::Ramified), sgn * e);
            } else {
                Poly vinv = mod_inverse(pmod(V1, r), r);
                Poly s = pmod(-(pmod(U1, r) * vinv), r);
                div.add(ClosedPoint::finite(r, ClosedPoint::Branch::Split, s), sgn * e);
            }
        }
    }
    add_infinity_part(C, U, V, sgn, div);
}

} // namespace

Divisor principal_divisor(const HyperellipticCurve& C, const FunctionElement& g)
{
    if (g.is_zero()) throw domain_error("principal_divisor: zero function");
    Poly gw = poly_gcd(g.u.den, g.v.den);
    Poly W = exact_div(g.u.den * g.v.den, gw);   // lcm, monic
    Poly U = g.u.num * exact_div(W, g.u.den);
    Poly V = g.v.num * exact_div(W, g.v.den);
    Divisor div;
    add_polynomial_part(C, U, V, +1, div);
    if (W.degree() > 0) add_polynomial_part(C, W, Poly(), -1, div);
    if (div.degree() != 0) throw std::logic_error("principal_divisor: nonzero divisor degree");
    return div;
}

FiberIndex fiber_index(const DiagonalForm& q, const ClosedPoint& P)
{
    if (!P.is_rational()) return FiberIndex::Unknown;
    return is_isotropic_global(q) ? FiberIndex::One : FiberIndex::Two;
}

DeltaResult delta_image_test(const DiagonalForm& q, const FunctionElement& g, const HyperellipticCurve& C)
{
    if (g.is_zero()) throw domain_error("delta_image_test: zero function");
    Divisor div = principal_divisor(C, g);
    bool unknown = false;
    for (const auto& [P, m] : div.support()) {
        if (m % 2 == 0) continue;
        switch (fiber_index(q, P)) {
            case FiberIndex::One: break;
            case FiberIndex::Two: return DeltaResult::NotInImage;
            case FiberIndex::Unknown: unknown = true; break;
        }
    }
    return unknown ? DeltaResult::Unknown : DeltaResult::InImage;
}

DnResult dn_subgroup_test(const DiagonalForm& q, const FunctionElement& g, const HyperellipticCurve& C)
{
    if (g.is_zero()) throw domain_error("dn_subgroup_test: zero function");
    if (g.is_constant()) return DnResult::Yes;          // a global unit
    if (is_isotropic_global(q)) return DnResult::Yes;   // N_q(Q(C)) = Q(C)*
    if (principal_divisor(C, g).all_even()) return DnResult::Yes;   // unit * square locally
    return DnResult::Unknown;
}

LocalLeading local_leading(const HyperellipticCurve& C, const ClosedPoint& P, const FunctionElement& g)
{
    if (g.is_zero()) throw domain_error("local_leading: zero function");
    long base = 16;
    for (int attempt = 0; attempt < 6; ++attempt) {
        long prec = base << attempt;
        Expansion E = make_expansion(C, P, prec);
        Laurent val = eval_function(C, g, E, prec);
        if (auto ord = val.order()) return LocalLeading{*ord, val.coeff(*ord)};
    }
    throw std::logic_error("local_leading: series precision exhausted");
}

} // namespace qflab
