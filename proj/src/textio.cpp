#include "qflab/textio.hpp"

#include <cctype>
#include <sstream>

namespace qflab {

namespace {

struct Lexer {
    const std::string& s;
    size_t pos = 0;

    void skip_ws()
    {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done()
    {
        skip_ws();
        return pos >= s.size();
    }
    char peek()
    {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c)
    {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c)
    {
        if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos);
    }
    Int integer()
    {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected an integer", pos);
        return Int(s.substr(start, pos - start));
    }
};

// Expression values: u(x) + v(x) y with rational-function parts.
struct ExprParser {
    Lexer lex;
    const std::optional<HyperellipticCurve>& curve;

    ExprParser(const std::string& s, const std::optional<HyperellipticCurve>& C) : lex{s}, curve(C) {}

    FunctionElement mul(const FunctionElement& a, const FunctionElement& b, size_t at)
    {
        if (!a.v.is_zero() && !b.v.is_zero()) {
            if (!curve) throw ParseError("product of y-terms requires a curve", at);
            return fe_mul(*curve, a, b);
        }
        // at most one side carries y; multiply componentwise
        if (a.v.is_zero()) return FunctionElement{a.u * b.u, a.u * b.v};
        return FunctionElement{b.u * a.u, b.u * a.v};
    }

    FunctionElement div(const FunctionElement& a, const FunctionElement& b, size_t at)
    {
        if (b.is_zero()) throw ParseError("division by zero", at);
        if (!b.v.is_zero()) {
            if (!curve) throw ParseError("division by a y-term requires a curve", at);
            return mul(a, fe_inverse(*curve, b), at);
        }
        return FunctionElement{a.u / b.u, a.v / b.u};
    }

    FunctionElement atom()
    {
        size_t at = lex.pos;
        if (lex.accept('(')) {
            FunctionElement e = expr();
            lex.expect(')');
            return e;
        }
        char c = lex.peek();
        if (c == 'x') {
            ++lex.pos;
            return fe_from_x(RatFn(Poly::x()));
        }
        if (c == 'y') {
            ++lex.pos;
            if (!curve) throw ParseError("'y' requires a curve", at);
            return FunctionElement{RatFn(), RatFn(Poly(Rat(1)))};
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return fe_constant(Rat(lex.integer()));
        throw ParseError("expected a number, 'x', 'y' or '('", lex.pos);
    }

    FunctionElement power()
    {
        FunctionElement base = atom();
        if (lex.accept('^')) {
            size_t at = lex.pos;
            Int e = lex.integer();
            if (e < 0 || e > 64) throw ParseError("exponent out of range", at);
            FunctionElement r = fe_constant(Rat(1));
            for (Int i = 0; i < e; ++i) r = mul(r, base, at);
            return r;
        }
        return base;
    }

    FunctionElement factor()
    {
        if (lex.accept('-')) return fe_neg(factor());
        if (lex.accept('+')) return factor();
        return power();
    }

    FunctionElement term()
    {
        FunctionElement acc = factor();
        for (;;) {
            size_t at = lex.pos;
            if (lex.accept('*'))
                acc = mul(acc, factor(), at);
            else if (lex.accept('/'))
                acc = div(acc, factor(), at);
            else
                return acc;
        }
    }

    FunctionElement expr()
    {
        FunctionElement acc = term();
        for (;;) {
            if (lex.accept('+'))
                acc = fe_add(acc, term());
            else if (lex.accept('-'))
                acc = fe_sub(acc, term());
            else
                return acc;
        }
    }
};

std::string rat_to_string(const Rat& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

bool needs_parens(const std::string& s)
{
    // parenthesize anything that is not a plain number or single power of x
    if (s.empty()) return true;
    size_t start = (s[0] == '-') ? 1 : 0;
    for (size_t i = start; i < s.size(); ++i) {
        char c = s[i];
        if (c == '+' || c == '-' || c == ' ') return true;
    }
    return false;
}

} // namespace

Rat parse_rational(const std::string& s)
{
    Lexer lex{s};
    bool neg = false;
    while (true) {
        if (lex.accept('-'))
            neg = !neg;
        else if (lex.accept('+'))
            ;
        else
            break;
    }
    Int n = lex.integer();
    Rat r(n);
    if (lex.accept('/')) {
        Int d = lex.integer();
        if (d == 0) throw ParseError("zero denominator", lex.pos);
        r = Rat(n, d);
        r.canonicalize();
    }
    if (!lex.done()) throw ParseError("trailing characters after rational", lex.pos);
    return neg ? Rat(-r) : r;
}

DiagonalForm parse_form(const std::string& s)
{
    std::vector<Rat> entries;
    size_t start = 0;
    while (start <= s.size()) {
        size_t comma = s.find(',', start);
        std::string piece = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (piece.find_first_not_of(" \t") == std::string::npos)
            throw ParseError("empty form entry", start);
        try {
            entries.push_back(parse_rational(piece));
        } catch (const ParseError& e) {
            throw ParseError(e.what(), start + e.pos);
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (entries.empty()) throw ParseError("empty form", 0);
    try {
        return DiagonalForm(std::move(entries));
    } catch (const domain_error& e) {
        throw ParseError(e.what(), 0);
    }
}

std::string form_to_string(const DiagonalForm& q)
{
    std::string out;
    for (size_t i = 0; i < q.entries().size(); ++i) {
        if (i) out += ",";
        out += rat_to_string(q.entries()[i]);
    }
    return out;
}

PfisterForm parse_pfister(const std::string& s)
{
    Lexer lex{s};
    lex.expect('<');
    lex.expect('<');
    size_t inner_start = lex.pos;
    size_t end = s.rfind(">>");
    if (end == std::string::npos || end < inner_start) throw ParseError("expected '>>'", s.size());
    std::string inner = s.substr(inner_start, end - inner_start);
    if (s.find_first_not_of(" \t", end + 2) != std::string::npos)
        throw ParseError("trailing characters after '>>'", end + 2);
    DiagonalForm entries = parse_form(inner);
    try {
        return PfisterForm(entries.entries());
    } catch (const domain_error& e) {
        throw ParseError(e.what(), inner_start);
    }
}

std::string pfister_to_string(const PfisterForm& p)
{
    return "<<" + form_to_string(DiagonalForm(p.slots())) + ">>";
}

HyperellipticCurve parse_curve(const std::string& s)
{
    Lexer lex{s};
    if (!lex.accept('y')) throw ParseError("curve must start with 'y^2 ='", lex.pos);
    lex.expect('^');
    if (lex.integer() != 2) throw ParseError("curve must start with 'y^2 ='", lex.pos);
    lex.expect('=');
    std::string rhs = s.substr(lex.pos);
    FunctionElement fe = parse_function(rhs, std::nullopt);
    if (!fe.v.is_zero() || fe.u.den.degree() != 0)
        throw ParseError("curve right-hand side must be a polynomial in x", lex.pos);
    Poly f = fe.u.num * (Rat(1) / fe.u.den.coeff(0));
    try {
        return HyperellipticCurve(std::move(f));
    } catch (const domain_error& e) {
        throw ParseError(e.what(), lex.pos);
    }
}

std::string curve_to_string(const HyperellipticCurve& C) { return "y^2 = " + poly_to_string(C.f()); }

FunctionElement parse_function(const std::string& s, const std::optional<HyperellipticCurve>& C)
{
    ExprParser p(s, C);
    FunctionElement e = p.expr();
    if (!p.lex.done()) throw ParseError("trailing characters in expression", p.lex.pos);
    return e;
}

std::string poly_to_string(const Poly& p)
{
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        Rat c = p.coeff(i);
        if (c == 0) continue;
        bool neg = sign(c) < 0;
        Rat a = neg ? Rat(-c) : c;
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        std::string mag;
        if (i == 0) {
            mag = rat_to_string(a);
        } else {
            std::string xs = (i == 1) ? "x" : "x^" + std::to_string(i);
            mag = (a == 1) ? xs : rat_to_string(a) + "*" + xs;
        }
        out += mag;
    }
    return out;
}

std::string ratfn_to_string(const RatFn& r)
{
    if (r.is_zero()) return "0";
    std::string n = poly_to_string(r.num);
    if (r.den.degree() == 0 && r.den.coeff(0) == 1) return n;
    std::string d = poly_to_string(r.den);
    std::string left = needs_parens(n) ? "(" + n + ")" : n;
    std::string right = needs_parens(d) ? "(" + d + ")" : d;
    return left + "/" + right;
}

std::string function_to_string(const FunctionElement& g)
{
    if (g.is_zero()) return "0";
    if (g.v.is_zero()) return ratfn_to_string(g.u);
    std::string vs = ratfn_to_string(g.v);
    std::string ypart;
    if (vs == "1")
        ypart = "y";
    else
        ypart = (needs_parens(vs) || vs.find('/') != std::string::npos ? "(" + vs + ")" : vs) + "*y";
    if (g.u.is_zero()) return ypart;
    return ratfn_to_string(g.u) + " + " + ypart;
}

std::string point_to_string(const ClosedPoint& P)
{
    if (P.is_infinite()) {
        switch (P.branch()) {
            case ClosedPoint::Branch::Ramified: return "(inf)";
            case ClosedPoint::Branch::Split: return P.inf_sign() > 0 ? "(inf+)" : "(inf-)";
            case ClosedPoint::Branch::Inert: return "(inf; deg 2)";
        }
    }
    if (P.minpoly().degree() == 1 && P.branch() != ClosedPoint::Branch::Inert)
        return "(" + rat_to_string(P.x0()) + "," + rat_to_string(P.y0()) + ")";
    std::string m = poly_to_string(P.minpoly());
    switch (P.branch()) {
        case ClosedPoint::Branch::Ramified: return "(" + m + "; y = 0)";
        case ClosedPoint::Branch::Split: return "(" + m + "; y = " + poly_to_string(P.y_rep()) + ")";
        case ClosedPoint::Branch::Inert: return "(" + m + "; inert)";
    }
    return "(?)";
}

std::string divisor_to_string(const Divisor& d)
{
    if (d.support().empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [P, m] : d.support()) {
        long a = m;
        if (first) {
            if (a < 0) {
                out += "-";
                a = -a;
            }
            first = false;
        } else {
            out += (a < 0) ? " - " : " + ";
            if (a < 0) a = -a;
        }
        out += std::to_string(a) + "*" + point_to_string(P);
    }
    return out;
}

std::string place_to_string(const Place& v) { return v.str(); }

PlaceSelector parse_place_selector(const std::string& s)
{
    if (s == "real" || s == "inf" || s == "oo") return PlaceSelector{PlaceSelector::Kind::Real, Place::real()};
    if (s == "global") return PlaceSelector{PlaceSelector::Kind::Global, std::nullopt};
    if (s == "all") return PlaceSelector{PlaceSelector::Kind::All, std::nullopt};
    Lexer lex{s};
    Int p = lex.integer();
    if (!lex.done()) throw ParseError("bad place selector", lex.pos);
    if (!is_prime(p)) throw ParseError("place must be 'real', 'global', 'all' or a prime", 0);
    return PlaceSelector{PlaceSelector::Kind::Finite, Place::finite(p)};
}

} // namespace qflab
