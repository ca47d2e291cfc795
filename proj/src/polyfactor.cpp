#include "qflab/poly.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>

namespace qflab {

namespace {

// ---- arithmetic in F_p[x], p < 2^31 ------------------------------------

using FpPoly = std::vector<int64_t>;   // coeff of x^i; trimmed

void fp_trim(FpPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int fp_deg(const FpPoly& a) { return static_cast<int>(a.size()) - 1; }

int64_t fp_pow(int64_t b, int64_t e, int64_t p)
{
    int64_t r = 1;
    b %= p;
    if (b < 0) b += p;
    while (e > 0) {
        if (e & 1) r = static_cast<int64_t>((__int128)r * b % p);
        b = static_cast<int64_t>((__int128)b * b % p);
        e >>= 1;
    }
    return r;
}

int64_t fp_inv(int64_t a, int64_t p) { return fp_pow(a, p - 2, p); }

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, int64_t p)
{
    if (a.empty() || b.empty()) return {};
    FpPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] = static_cast<int64_t>((r[i + j] + (__int128)a[i] * b[j]) % p);
    }
    fp_trim(r);
    return r;
}

FpPoly fp_add(const FpPoly& a, const FpPoly& b, int64_t p)
{
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + b[i]) % p;
    fp_trim(r);
    return r;
}

FpPoly fp_sub(const FpPoly& a, const FpPoly& b, int64_t p)
{
    FpPoly r(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] = ((r[i] - b[i]) % p + p) % p;
    fp_trim(r);
    return r;
}

// a <- a mod b; returns quotient
FpPoly fp_divmod(FpPoly& a, const FpPoly& b, int64_t p)
{
    FpPoly q(a.size() > b.size() ? a.size() - b.size() + 1 : 1, 0);
    int64_t binv = fp_inv(b.back(), p);
    while (fp_deg(a) >= fp_deg(b)) {
        int k = fp_deg(a) - fp_deg(b);
        int64_t c = static_cast<int64_t>((__int128)a.back() * binv % p);
        q[static_cast<size_t>(k)] = c;
        for (size_t i = 0; i < b.size(); ++i) {
            size_t ix = static_cast<size_t>(k) + i;
            a[ix] = static_cast<int64_t>(((a[ix] - (__int128)c * b[i]) % p + p) % p);
        }
        fp_trim(a);
    }
    fp_trim(q);
    return q;
}

FpPoly fp_mod(FpPoly a, const FpPoly& b, int64_t p)
{
    fp_divmod(a, b, p);
    return a;
}

FpPoly fp_monic(FpPoly a, int64_t p)
{
    if (a.empty()) return a;
    int64_t inv = fp_inv(a.back(), p);
    for (auto& c : a) c = static_cast<int64_t>((__int128)c * inv % p);
    return a;
}

FpPoly fp_gcd(FpPoly a, FpPoly b, int64_t p)
{
    while (!b.empty()) {
        FpPoly r = fp_mod(std::move(a), b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return fp_monic(std::move(a), p);
}

FpPoly fp_deriv(const FpPoly& a, int64_t p)
{
    if (a.size() <= 1) return {};
    FpPoly r(a.size() - 1);
    for (size_t i = 1; i < a.size(); ++i) r[i - 1] = static_cast<int64_t>((__int128)a[i] * (i % p) % p);
    fp_trim(r);
    return r;
}

FpPoly fp_powmod(FpPoly base, int64_t e, const FpPoly& m, int64_t p)
{
    FpPoly r{1};
    base = fp_mod(std::move(base), m, p);
    while (e > 0) {
        if (e & 1) r = fp_mod(fp_mul(r, base, p), m, p);
        base = fp_mod(fp_mul(base, base, p), m, p);
        e >>= 1;
    }
    return r;
}

// s*a + t*b = 1 mod p for coprime a, b.
void fp_bezout(const FpPoly& a, const FpPoly& b, int64_t p, FpPoly& s, FpPoly& t)
{
    FpPoly r0 = a, r1 = b;
    FpPoly s0{1}, s1{}, t0{}, t1{1};
    while (!r1.empty()) {
        FpPoly rr = r0;
        FpPoly q = fp_divmod(rr, r1, p);
        FpPoly s2 = fp_sub(s0, fp_mul(q, s1, p), p);
        FpPoly t2 = fp_sub(t0, fp_mul(q, t1, p), p);
        r0 = std::move(r1);
        r1 = std::move(rr);
        s0 = std::move(s1);
        s1 = std::move(s2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (fp_deg(r0) != 0) throw std::logic_error("fp_bezout: inputs not coprime");
    int64_t inv = fp_inv(r0[0], p);
    for (auto& c : s0) c = static_cast<int64_t>((__int128)c * inv % p);
    for (auto& c : t0) c = static_cast<int64_t>((__int128)c * inv % p);
    s = std::move(s0);
    t = std::move(t0);
}

// Berlekamp factorization of a monic squarefree polynomial mod p.
std::vector<FpPoly> berlekamp(const FpPoly& g, int64_t p)
{
    int n = fp_deg(g);
    if (n <= 1) return {g};
    FpPoly xp = fp_powmod(FpPoly{0, 1}, p, g, p);
    std::vector<FpPoly> rows(static_cast<size_t>(n));
    rows[0] = FpPoly{1};
    for (int i = 1; i < n; ++i)
        rows[static_cast<size_t>(i)] = fp_mod(fp_mul(rows[static_cast<size_t>(i - 1)], xp, p), g, p);

    // M = Q^T - I with Q[i][j] = coeff_j(x^(p i) mod g); nullspace of M gives
    // the Berlekamp subalgebra.
    auto idx = [](int i) { return static_cast<size_t>(i); };
    std::vector<std::vector<int64_t>> M(idx(n), std::vector<int64_t>(idx(n), 0));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            int64_t q = (i < static_cast<int>(rows[idx(j)].size())) ? rows[idx(j)][idx(i)] : 0;
            M[idx(i)][idx(j)] = ((q - (i == j ? 1 : 0)) % p + p) % p;
        }

    std::vector<int> pivot_col;
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        for (int row = rank; row < n; ++row)
            if (M[idx(row)][idx(col)] != 0) {
                piv = row;
                break;
            }
        if (piv < 0) continue;
        std::swap(M[idx(piv)], M[idx(rank)]);
        int64_t inv = fp_inv(M[idx(rank)][idx(col)], p);
        for (int j = 0; j < n; ++j) M[idx(rank)][idx(j)] = static_cast<int64_t>((__int128)M[idx(rank)][idx(j)] * inv % p);
        for (int row = 0; row < n; ++row) {
            if (row == rank) continue;
            int64_t c = M[idx(row)][idx(col)];
            if (c == 0) continue;
            for (int j = 0; j < n; ++j)
                M[idx(row)][idx(j)] = static_cast<int64_t>(((M[idx(row)][idx(j)] - (__int128)c * M[idx(rank)][idx(j)]) % p + p) % p);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(idx(n), false);
    for (int c : pivot_col) is_pivot[idx(c)] = true;

    std::vector<FpPoly> basis;
    for (int col = 0; col < n; ++col) {
        if (is_pivot[idx(col)]) continue;
        FpPoly v(idx(n), 0);
        v[idx(col)] = 1;
        for (int r = 0; r < rank; ++r) v[idx(pivot_col[idx(r)])] = (p - M[idx(r)][idx(col)]) % p;
        fp_trim(v);
        basis.push_back(std::move(v));
    }

    size_t expected = basis.size();
    std::vector<FpPoly> factors{fp_monic(g, p)};
    for (const FpPoly& v : basis) {
        if (factors.size() >= expected) break;
        if (fp_deg(v) < 1) continue;
        std::vector<FpPoly> next;
        for (const FpPoly& h : factors) {
            if (fp_deg(h) <= 1) {
                next.push_back(h);
                continue;
            }
            FpPoly rem = h;
            for (int64_t c = 0; c < p && fp_deg(rem) > 1; ++c) {
                FpPoly vc = v;
                if (vc.empty()) vc.push_back(0);
                vc[0] = ((vc[0] - c) % p + p) % p;
                fp_trim(vc);
                if (vc.empty()) continue;
                FpPoly d = fp_gcd(rem, vc, p);
                if (fp_deg(d) > 0 && fp_deg(d) < fp_deg(rem)) {
                    next.push_back(d);
                    FpPoly tmp = rem;
                    FpPoly q = fp_divmod(tmp, d, p);
                    rem = fp_monic(std::move(q), p);
                }
            }
            if (fp_deg(rem) > 0) next.push_back(rem);
        }
        factors = std::move(next);
    }
    return factors;
}

// ---- Z[x] helpers -------------------------------------------------------

using ZPoly = std::vector<Int>;

void z_trim(ZPoly& a)
{
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int z_deg(const ZPoly& a) { return static_cast<int>(a.size()) - 1; }

ZPoly z_mul(const ZPoly& a, const ZPoly& b)
{
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, Int(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

ZPoly z_mod_reduce(ZPoly a, const Int& m)
{
    for (Int& c : a) {
        c %= m;
        if (sign(c) < 0) c += m;
    }
    z_trim(a);
    return a;
}

ZPoly z_symmetric(ZPoly a, const Int& m)
{
    Int half = m / 2;
    for (Int& c : a) {
        c %= m;
        if (sign(c) < 0) c += m;
        if (c > half) c -= m;
    }
    z_trim(a);
    return a;
}

Int z_content(const ZPoly& a)
{
    Int g = 0;
    for (const Int& c : a) g = gcd(g, c);
    return g;
}

// true and sets quot iff b divides a exactly over Z
bool z_divides(const ZPoly& a, const ZPoly& b, ZPoly& quot)
{
    if (b.empty()) return false;
    ZPoly r = a;
    quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 1, Int(0));
    while (z_deg(r) >= z_deg(b)) {
        if (!mpz_divisible_p(r.back().get_mpz_t(), b.back().get_mpz_t())) return false;
        Int c = r.back() / b.back();
        int k = z_deg(r) - z_deg(b);
        quot[static_cast<size_t>(k)] = c;
        for (size_t i = 0; i < b.size(); ++i) r[static_cast<size_t>(k) + i] -= c * b[i];
        z_trim(r);
    }
    z_trim(quot);
    return r.empty();
}

FpPoly z_to_fp(const ZPoly& a, int64_t p)
{
    FpPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        Int c = a[i] % p;
        if (sign(c) < 0) c += p;
        r[i] = c.get_si();
    }
    fp_trim(r);
    return r;
}

ZPoly fp_to_z(const FpPoly& a)
{
    ZPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = Int(static_cast<long>(a[i]));
    return r;
}

// Linear Hensel lifting of G = g*h (mod p) to mod p^K; g monic,
// s*g + t*h = 1 (mod p).
void hensel_pair(const ZPoly& G, ZPoly& g, ZPoly& h, const FpPoly& s, const FpPoly& t, int64_t p, unsigned K)
{
    FpPoly g_fp = z_to_fp(g, p);
    Int pj(static_cast<long>(p));
    for (unsigned j = 1; j < K; ++j) {
        ZPoly gh = z_mul(g, h);
        ZPoly diff(std::max(G.size(), gh.size()), Int(0));
        for (size_t i = 0; i < G.size(); ++i) diff[i] += G[i];
        for (size_t i = 0; i < gh.size(); ++i) diff[i] -= gh[i];
        FpPoly e(diff.size());
        for (size_t i = 0; i < diff.size(); ++i) {
            Int c = diff[i] / pj;   // exact: G = g*h mod p^j
            c %= p;
            if (sign(c) < 0) c += p;
            e[i] = c.get_si();
        }
        fp_trim(e);
        if (!e.empty()) {
            FpPoly te = fp_mul(t, e, p);
            FpPoly u = te;
            FpPoly q = fp_divmod(u, g_fp, p);   // te = q*g + u
            FpPoly w = fp_add(fp_mul(s, e, p), fp_mul(q, z_to_fp(h, p), p), p);
            ZPoly gu = fp_to_z(u);
            ZPoly hw = fp_to_z(w);
            if (g.size() < gu.size()) g.resize(gu.size(), Int(0));
            for (size_t i = 0; i < gu.size(); ++i) g[i] += gu[i] * pj;
            if (h.size() < hw.size()) h.resize(hw.size(), Int(0));
            for (size_t i = 0; i < hw.size(); ++i) h[i] += hw[i] * pj;
            z_trim(g);
            z_trim(h);
        }
        pj *= p;
    }
}

// Lift G = lc * prod(fs) (mod p) to p^K; returns monic factors mod p^K.
std::vector<ZPoly> hensel_lift_all(const ZPoly& G, const std::vector<FpPoly>& fs, int64_t p, unsigned K)
{
    Int pK;
    mpz_ui_pow_ui(pK.get_mpz_t(), static_cast<unsigned long>(p), K);
    std::vector<ZPoly> lifted;
    ZPoly cur = G;
    for (size_t i = 0; i + 1 < fs.size(); ++i) {
        FpPoly g_fp = fs[i];
        FpPoly h_fp = z_to_fp(cur, p);
        {
            FpPoly tmp = h_fp;
            FpPoly q = fp_divmod(tmp, g_fp, p);
            if (!tmp.empty()) throw std::logic_error("hensel_lift_all: modular factor does not divide");
            h_fp = q;
        }
        FpPoly s, t;
        fp_bezout(g_fp, h_fp, p, s, t);
        ZPoly g = fp_to_z(g_fp);
        ZPoly h = fp_to_z(h_fp);
        hensel_pair(cur, g, h, s, t, p, K);
        lifted.push_back(z_mod_reduce(g, pK));
        cur = z_mod_reduce(h, pK);
    }
    Int inv;
    if (cur.empty() || mpz_invert(inv.get_mpz_t(), cur.back().get_mpz_t(), pK.get_mpz_t()) == 0)
        throw std::logic_error("hensel_lift_all: leading coefficient not invertible");
    for (Int& c : cur) c = c * inv % pK;
    lifted.push_back(z_mod_reduce(cur, pK));
    return lifted;
}

ZPoly poly_to_zpoly_primitive(const Poly& f)
{
    Int den_lcm = 1;
    for (const Rat& c : f.coeffs()) den_lcm = lcm(den_lcm, den(c));
    ZPoly z(f.coeffs().size());
    Int cont = 0;
    for (size_t i = 0; i < f.coeffs().size(); ++i) {
        Rat scaled = f.coeffs()[i] * Rat(den_lcm);
        z[i] = num(scaled);
        cont = gcd(cont, z[i]);
    }
    if (cont == 0) cont = 1;
    if (sign(z.back()) < 0) cont = -cont;
    for (Int& c : z) c /= cont;
    return z;
}

Poly zpoly_to_poly(const ZPoly& z)
{
    std::vector<Rat> c(z.size());
    for (size_t i = 0; i < z.size(); ++i) c[i] = Rat(z[i]);
    return Poly(std::move(c));
}

// Factor a primitive squarefree Z-polynomial (deg >= 2, lc > 0) into
// irreducible primitive Z-polynomials: Berlekamp mod p, Hensel lifting,
// Zassenhaus subset recombination.
std::vector<ZPoly> factor_squarefree_z(ZPoly G)
{
    std::vector<ZPoly> out;
    static const int64_t kPrimes[] = {3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,
                                      53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109,
                                      113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191,
                                      193, 197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269,
                                      271, 277, 281, 283, 293, 307, 311, 313, 317, 331, 337, 347, 349, 353,
                                      359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421, 431, 433, 439,
                                      443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523,
                                      541, 547, 557, 563, 569, 571, 577, 587, 593, 599, 601, 607, 613, 617};
    int64_t p = 0;
    FpPoly gbar;
    for (int64_t cand : kPrimes) {
        if (mpz_divisible_ui_p(G.back().get_mpz_t(), static_cast<unsigned long>(cand))) continue;
        FpPoly fp = z_to_fp(G, cand);
        FpPoly d = fp_deriv(fp, cand);
        if (d.empty()) continue;
        if (fp_deg(fp_gcd(fp, d, cand)) == 0) {
            p = cand;
            gbar = fp_monic(std::move(fp), cand);
            break;
        }
    }
    if (p == 0) throw std::logic_error("factor_squarefree_z: no good prime found");

    std::vector<FpPoly> modular = berlekamp(gbar, p);
    if (modular.size() == 1) {
        out.push_back(std::move(G));
        return out;
    }
    std::sort(modular.begin(), modular.end(), [](const FpPoly& a, const FpPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });

    Int H = 0;
    for (const Int& c : G) {
        Int a = abs(c);
        if (a > H) H = a;
    }
    Int B = (Int(1) << static_cast<unsigned>(z_deg(G))) * Int(z_deg(G) + 1) * H;
    Int target = 2 * B * abs(G.back()) + 1;
    unsigned K = 1;
    {
        Int pk(static_cast<long>(p));
        while (pk < target) {
            pk *= p;
            ++K;
        }
    }
    std::vector<ZPoly> lifted = hensel_lift_all(G, modular, p, K);
    Int pK;
    mpz_ui_pow_ui(pK.get_mpz_t(), static_cast<unsigned long>(p), K);

    std::vector<bool> used(lifted.size(), false);
    size_t remaining = lifted.size();
    ZPoly F = std::move(G);

    bool changed = true;
    while (changed && remaining > 0) {
        changed = false;
        std::vector<size_t> live;
        for (size_t i = 0; i < lifted.size(); ++i)
            if (!used[i]) live.push_back(i);
        for (size_t s = 1; s <= live.size() / 2 && !changed; ++s) {
            std::vector<size_t> idx(s);
            std::function<bool(size_t, size_t)> choose = [&](size_t pos, size_t start) -> bool {
                if (pos == s) {
                    ZPoly cand{F.back()};
                    for (size_t m = 0; m < s; ++m) cand = z_mod_reduce(z_mul(cand, lifted[idx[m]]), pK);
                    cand = z_symmetric(std::move(cand), pK);
                    Int c = z_content(cand);
                    if (c != 0 && c != 1)
                        for (Int& cc : cand) cc /= c;
                    if (cand.empty()) return false;
                    if (sign(cand.back()) < 0)
                        for (Int& cc : cand) cc = -cc;
                    ZPoly quot;
                    if (!z_divides(F, cand, quot)) return false;
                    out.push_back(cand);
                    for (size_t m = 0; m < s; ++m) used[idx[m]] = true;
                    remaining -= s;
                    F = std::move(quot);
                    Int fc = z_content(F);
                    if (sign(F.back()) < 0) fc = -fc;
                    if (fc != 0 && fc != 1)
                        for (Int& cc : F) cc /= fc;
                    return true;
                }
                for (size_t k = start; k < live.size(); ++k) {
                    idx[pos] = live[k];
                    if (choose(pos + 1, k + 1)) return true;
                }
                return false;
            };
            if (choose(0, 0)) changed = true;
        }
    }
    if (z_deg(F) > 0) out.push_back(std::move(F));
    return out;
}

} // namespace

PolyFactors factor_poly(const Poly& f)
{
    if (f.is_zero()) throw domain_error("factor_poly: zero polynomial");
    PolyFactors out;
    out.unit = f.coeff(f.degree());
    if (f.degree() == 0) return out;
    SquarefreeDecomposition sq = squarefree_decomposition(f);
    out.unit = sq.unit;
    for (const auto& [g, mult] : sq.factors) {
        if (g.degree() == 1) {
            out.factors.emplace_back(g.monic(), mult);
            continue;
        }
        ZPoly gz = poly_to_zpoly_primitive(g);
        for (const ZPoly& irr : factor_squarefree_z(gz)) out.factors.emplace_back(zpoly_to_poly(irr).monic(), mult);
    }
    std::sort(out.factors.begin(), out.factors.end(), [](const auto& a, const auto& b) {
        if (!(a.first == b.first)) return a.first < b.first;
        return a.second < b.second;
    });
    return out;
}

} // namespace qflab
