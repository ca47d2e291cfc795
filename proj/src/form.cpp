#include "qflab/form.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace qflab {

DiagonalForm::DiagonalForm(std::vector<Rat> entries) : entries_(std::move(entries))
{
    if (entries_.empty()) throw domain_error("DiagonalForm: rank must be >= 1");
    for (const Rat& a : entries_)
        if (a == 0) throw domain_error("DiagonalForm: zero entry (singular form)");
}

DiagonalForm direct_sum(const DiagonalForm& q, const DiagonalForm& r)
{
    std::vector<Rat> e = q.entries();
    e.insert(e.end(), r.entries().begin(), r.entries().end());
    return DiagonalForm(std::move(e));
}

DiagonalForm tensor(const DiagonalForm& q, const DiagonalForm& r)
{
    std::vector<Rat> e;
    e.reserve(q.entries().size() * r.entries().size());
    for (const Rat& a : q.entries())
        for (const Rat& b : r.entries()) e.push_back(a * b);
    return DiagonalForm(std::move(e));
}

DiagonalForm scale(const Rat& a, const DiagonalForm& q)
{
    if (a == 0) throw domain_error("scale: zero scalar");
    std::vector<Rat> e;
    e.reserve(q.entries().size());
    for (const Rat& b : q.entries()) e.push_back(a * b);
    return DiagonalForm(std::move(e));
}

DiagonalForm canonicalized(const DiagonalForm& q)
{
    std::vector<Rat> e;
    for (const Rat& a : q.entries()) e.push_back(Rat(squarefree_part(a).rep));
    std::sort(e.begin(), e.end(), [](const Rat& x, const Rat& y) {
        if (abs(x) != abs(y)) return abs(x) < abs(y);
        return y < x;   // positive representative first
    });
    return DiagonalForm(std::move(e));
}

namespace {

SquareClass class_mul(const SquareClass& a, const SquareClass& b)
{
    return squarefree_part(Int(a.rep * b.rep));
}

int signature_of(const std::vector<Rat>& entries)
{
    int s = 0;
    for (const Rat& a : entries) s += sign(a) > 0 ? 1 : -1;
    return s;
}

int hasse_of_entries(const std::vector<Rat>& entries, const Place& v)
{
    int s = 1;
    for (size_t i = 0; i < entries.size(); ++i)
        for (size_t j = i + 1; j < entries.size(); ++j)
            s *= hilbert_symbol(entries[i], entries[j], v);
    return s;
}

// Witt-level data; enough to decide isotropy at every place.
struct Virt {
    int rank;
    SquareClass disc;
    std::map<Place, int> hasse_minus;
    int signature;

    int hasse_at(const Place& v) const { return hasse_minus.contains(v) ? -1 : 1; }
};

Virt virt_of(const FormInvariants& inv)
{
    return Virt{inv.rank, inv.disc, inv.hasse_minus, inv.signature};
}

bool virt_isotropic_local(const Virt& f, const Place& v)
{
    if (v.is_real()) return std::abs(f.signature) < f.rank;
    if (f.rank <= 1) return false;
    if (f.rank >= 5) return true;
    Rat d(f.disc.rep);
    switch (f.rank) {
        case 2: return is_local_square(-d, v);
        case 3: return hilbert_symbol(Rat(-1), -d, v) == f.hasse_at(v);
        default:   // rank 4
            return !is_local_square(d, v) || f.hasse_at(v) == hilbert_symbol(Rat(-1), Rat(-1), v);
    }
}

std::vector<Place> virt_finite_scan(const Virt& f)
{
    std::set<Place> s;
    s.insert(Place::finite(2));
    for (const Int& p : odd_prime_support(Rat(f.disc.rep))) s.insert(Place::finite(p));
    for (const auto& [v, h] : f.hasse_minus)
        if (v.is_finite()) s.insert(v);
    return {s.begin(), s.end()};
}

bool virt_isotropic(const Virt& f, const Field& fld)
{
    if (fld.is_local()) return virt_isotropic_local(f, fld.place());
    if (f.rank <= 1) return false;
    if (f.rank == 2) return f.disc.rep == -1;
    if (std::abs(f.signature) >= f.rank) return false;
    if (f.rank >= 5) return true;
    for (const Place& v : virt_finite_scan(f))
        if (!virt_isotropic_local(f, v)) return false;
    return true;
}

// Invariants of q' where q = H _|_ q'.
Virt virt_split_hyperbolic(const Virt& f)
{
    Virt g;
    g.rank = f.rank - 2;
    g.disc = class_mul(f.disc, SquareClass{Int(-1)});
    g.signature = f.signature;
    Rat dnew(g.disc.rep);
    std::set<Place> touched;
    for (const auto& [v, h] : f.hasse_minus) touched.insert(v);
    for (const Place& v : candidate_places({dnew})) touched.insert(v);
    for (const Place& v : touched) {
        int h = f.hasse_at(v) * hilbert_symbol(Rat(-1), dnew, v);
        if (h == -1) g.hasse_minus.emplace(v, -1);
    }
    return g;
}

int hyperbolic_hasse_at(int planes, const Place& v)
{
    return (planes / 2) % 2 != 0 ? hilbert_symbol(Rat(-1), Rat(-1), v) : 1;
}

// ---- explicit kernel synthesis ----------------------------------------

bool matches_local(const std::vector<Rat>& cand, const Virt& target, const Place& v)
{
    if (v.is_real()) return signature_of(cand) == target.signature;
    Rat prod(1);
    for (const Rat& a : cand) prod *= a;
    return is_local_square(prod * Rat(target.disc.rep), v) && hasse_of_entries(cand, v) == target.hasse_at(v);
}

bool matches_global(const std::vector<Rat>& cand, const Virt& target)
{
    if (signature_of(cand) != target.signature) return false;
    Rat prod(1);
    for (const Rat& a : cand) prod *= a;
    if (!(squarefree_part(prod) == target.disc)) return false;
    for (const Place& v : candidate_places([&] {
             std::vector<Rat> vals = cand;
             vals.push_back(Rat(target.disc.rep));
             for (const auto& [w, h] : target.hasse_minus)
                 if (w.is_finite()) vals.push_back(Rat(w.prime()));
             return vals;
         }()))
        if (hasse_of_entries(cand, v) != target.hasse_at(v)) return false;
    return true;
}

std::vector<Int> local_class_reps(const Place& v)
{
    if (v.is_real()) return {Int(1), Int(-1)};
    const Int& p = v.prime();
    if (p == 2) return {Int(1), Int(3), Int(5), Int(7), Int(2), Int(6), Int(10), Int(14)};
    Int u = 2;
    while (legendre_symbol(u, p) != -1) ++u;
    return {Int(1), u, p, u * p};
}

std::optional<DiagonalForm> synth_local_kernel(const Virt& target, const Place& v)
{
    if (target.rank == 0) return std::nullopt;
    std::vector<Int> pool = local_class_reps(v);
    std::vector<Rat> cand(static_cast<size_t>(target.rank));
    std::function<const DiagonalForm*(size_t)> rec_result = nullptr;
    std::optional<DiagonalForm> found;
    std::function<bool(size_t)> rec = [&](size_t depth) -> bool {
        if (depth == cand.size()) {
            if (!matches_local(cand, target, v)) return false;
            DiagonalForm f(cand);
            if (is_isotropic(f, v)) return false;
            found = f;
            return true;
        }
        for (const Int& c : pool) {
            cand[depth] = Rat(c);
            if (rec(depth + 1)) return true;
        }
        return false;
    };
    if (!rec(0)) throw std::logic_error("witt_decompose: local kernel synthesis failed");
    return found;
}

std::vector<Int> global_pool(const Virt& target, bool with_pairs)
{
    std::set<Int> primes{Int(2), Int(3), Int(5), Int(7), Int(11), Int(13)};
    for (const Int& p : odd_prime_support(Rat(target.disc.rep))) primes.insert(p);
    for (const auto& [v, h] : target.hasse_minus)
        if (v.is_finite()) primes.insert(v.prime());
    std::set<Int> mags{Int(1)};
    for (const Int& p : primes) mags.insert(p);
    if (with_pairs)
        for (const Int& p : primes)
            for (const Int& q : primes)
                if (p < q) mags.insert(p * q);
    std::vector<Int> pool;
    for (const Int& m : mags) {
        pool.push_back(m);
        pool.push_back(-m);
    }
    std::sort(pool.begin(), pool.end(), [](const Int& a, const Int& b) {
        if (abs(a) != abs(b)) return abs(a) < abs(b);
        return a > b;
    });
    return pool;
}

// Searches entries (e_1..e_{r-1}) over the pool with e_r pinned by the
// discriminant, accepting the first candidate whose invariants match.
std::optional<DiagonalForm> synth_global_search(const Virt& target, const std::vector<Int>& pool,
                                                const std::vector<Rat>& prefix)
{
    size_t free_count = static_cast<size_t>(target.rank) - prefix.size();
    std::vector<Rat> cand = prefix;
    cand.resize(static_cast<size_t>(target.rank));
    std::optional<DiagonalForm> found;
    std::function<bool(size_t)> rec = [&](size_t depth) -> bool {
        if (depth + 1 == free_count) {
            Int prod = 1;
            for (size_t i = 0; i + 1 < cand.size(); ++i) {
                const Rat& a = cand[i];
                prod *= num(a) * den(a);
            }
            cand.back() = Rat(class_mul(SquareClass{prod == 0 ? Int(1) : squarefree_part(prod).rep}, target.disc).rep);
            if (!matches_global(cand, target)) return false;
            DiagonalForm f(cand);
            if (is_isotropic(f, Field::global())) return false;
            found = f;
            return true;
        }
        for (const Int& c : pool) {
            cand[prefix.size() + depth] = Rat(c);
            if (rec(depth + 1)) return true;
        }
        return false;
    };
    if (free_count == 0) throw std::logic_error("witt_decompose: empty synthesis");
    rec(0);
    return found;
}

std::optional<DiagonalForm> synth_global_kernel(const Virt& target)
{
    if (target.rank == 0) return std::nullopt;
    std::vector<Rat> prefix;
    Virt goal = target;
    bool definite = std::abs(target.signature) == target.rank;
    if (definite && target.rank > 3) {
        // peel off sign * <1,...,1> and synthesize the last three entries
        Rat s(target.signature > 0 ? 1 : -1);
        for (int i = 0; i + 3 < target.rank; ++i) prefix.push_back(s);
    }
    for (bool pairs : {false, true}) {
        auto pool = global_pool(target, pairs);
        if (definite) {
            // keep candidate entries on the definite side
            std::vector<Int> signed_pool;
            for (const Int& c : pool)
                if ((target.signature > 0) == (sign(c) > 0)) signed_pool.push_back(c);
            pool = signed_pool;
        }
        if (auto f = synth_global_search(goal, pool, prefix)) return f;
    }
    throw std::logic_error("witt_decompose: global kernel synthesis failed");
}

} // namespace

FormInvariants invariants(const DiagonalForm& q)
{
    FormInvariants inv;
    inv.rank = q.rank();
    Rat prod(1);
    for (const Rat& a : q.entries()) prod *= a;
    inv.disc = squarefree_part(prod);
    inv.signature = signature_of(q.entries());
    for (const Place& v : candidate_places(q.entries()))
        if (hasse_of_entries(q.entries(), v) == -1) inv.hasse_minus.emplace(v, -1);
    return inv;
}

bool is_isotropic(const DiagonalForm& q, const Place& v)
{
    if (v.is_real()) {
        int s = signature_of(q.entries());
        return std::abs(s) < q.rank();
    }
    if (q.rank() <= 1) return false;
    if (q.rank() >= 5) return true;
    Virt f = virt_of(invariants(q));
    return virt_isotropic_local(f, v);
}

bool is_isotropic_global(const DiagonalForm& q)
{
    return virt_isotropic(virt_of(invariants(q)), Field::global());
}

bool is_isotropic(const DiagonalForm& q, const Field& f)
{
    return f.is_global() ? is_isotropic_global(q) : is_isotropic(q, f.place());
}

bool is_isometric(const DiagonalForm& q, const DiagonalForm& r, const Field& f)
{
    if (q.rank() != r.rank()) return false;
    FormInvariants a = invariants(q);
    FormInvariants b = invariants(r);
    if (f.is_global())
        return a.disc == b.disc && a.signature == b.signature && a.hasse_minus == b.hasse_minus;
    const Place& v = f.place();
    if (v.is_real()) return a.signature == b.signature;
    Rat dq(a.disc.rep), dr(b.disc.rep);
    return is_local_square(dq * dr, v) && a.hasse_at(v) == b.hasse_at(v);
}

bool is_hyperbolic(const DiagonalForm& q, const Field& f)
{
    if (q.rank() % 2 != 0) return false;
    int m = q.rank() / 2;
    FormInvariants inv = invariants(q);
    SquareClass target_disc{(m % 2 != 0) ? Int(-1) : Int(1)};
    if (f.is_global()) {
        if (inv.signature != 0 || !(inv.disc == target_disc)) return false;
        std::vector<Rat> vals{Rat(inv.disc.rep)};
        for (const auto& [v, h] : inv.hasse_minus)
            if (v.is_finite()) vals.push_back(Rat(v.prime()));
        for (const Place& v : candidate_places(vals))
            if (inv.hasse_at(v) != hyperbolic_hasse_at(m, v)) return false;
        return true;
    }
    const Place& v = f.place();
    if (v.is_real()) return inv.signature == 0;
    return is_local_square(Rat(inv.disc.rep * target_disc.rep), v) &&
           inv.hasse_at(v) == hyperbolic_hasse_at(m, v);
}

WittClass witt_decompose(const DiagonalForm& q, const Field& f)
{
    Virt cur = virt_of(invariants(q));
    int index = 0;
    while (cur.rank >= 2 && virt_isotropic(cur, f)) {
        cur = virt_split_hyperbolic(cur);
        ++index;
    }
    WittClass w;
    w.witt_index = index;
    w.anisotropic_kernel = f.is_global() ? synth_global_kernel(cur) : synth_local_kernel(cur, f.place());
    return w;
}

bool represents(const DiagonalForm& q, const Rat& x, const Field& f)
{
    if (x == 0) throw domain_error("represents: zero value");
    return is_isotropic(direct_sum(q, DiagonalForm({-x})), f);
}

bool in_fundamental_power(const DiagonalForm& q, int n)
{
    if (n < 1 || n > 3) throw domain_error("in_fundamental_power: n must be 1, 2 or 3");
    if (q.rank() % 2 != 0) return false;
    if (n == 1) return true;
    FormInvariants inv = invariants(q);
    long r = q.rank();
    Int signed_disc = inv.disc.rep;
    if ((r * (r - 1) / 2) % 2 != 0) signed_disc = -signed_disc;
    if (!(squarefree_part(signed_disc).rep == 1)) return false;
    if (n == 2) return true;
    if (inv.signature % 8 != 0) return false;
    int m = q.rank() / 2;
    std::vector<Rat> vals = q.entries();
    for (const Place& v : candidate_places(vals)) {
        if (v.is_real()) continue;
        if (inv.hasse_at(v) != hyperbolic_hasse_at(m, v)) return false;
    }
    return true;
}

std::vector<Place> anisotropic_places(const DiagonalForm& q)
{
    if (q.rank() < 3)
        throw domain_error("anisotropic_places: rank <= 2 forms can be anisotropic at infinitely many places");
    std::vector<Place> out;
    for (const Place& v : candidate_places(q.entries()))
        if (!is_isotropic(q, v)) out.push_back(v);
    return out;
}

} // namespace qflab
