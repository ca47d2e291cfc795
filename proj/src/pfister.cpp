#include "qflab/pfister.hpp"

#include <map>

namespace qflab {

PfisterForm::PfisterForm(std::vector<Rat> slots) : slots_(std::move(slots))
{
    if (slots_.empty()) throw domain_error("PfisterForm: needs at least one slot");
    for (const Rat& a : slots_)
        if (a == 0) throw domain_error("PfisterForm: zero slot");
}

DiagonalForm expand(const PfisterForm& p)
{
    std::vector<Rat> e{Rat(1)};
    for (const Rat& a : p.slots()) {
        std::vector<Rat> next = e;
        for (const Rat& b : e) next.push_back(a * b);
        e = std::move(next);
    }
    return DiagonalForm(std::move(e));
}

bool is_pfister_neighbor(const DiagonalForm& qp, const PfisterForm& p)
{
    if (p.fold() > 3) throw domain_error("is_pfister_neighbor: folds > 3 unsupported");
    int N = 1 << p.fold();
    if (qp.rank() > N) throw domain_error("is_pfister_neighbor: rank exceeds the Pfister rank");
    if (2 * qp.rank() <= N) return false;   // rank < 2^(n-1)+1
    const Rat& lambda = qp.entries().front();
    DiagonalForm ambient = scale(lambda, expand(p));
    DiagonalForm diff = direct_sum(ambient, scale(Rat(-1), qp));
    // q' embeds into lambda*p iff the difference has Witt index >= rank(q')
    return witt_decompose(diff, Field::global()).witt_index >= qp.rank();
}

std::optional<std::vector<Rat>> find_representation(const DiagonalForm& q, const Rat& x, long box)
{
    const auto& a = q.entries();
    size_t n = a.size();
    size_t half = n / 2;
    // meet in the middle on exact partial values
    std::map<Rat, std::vector<Rat>> partial;
    std::vector<Rat> w(n, Rat(0));
    std::function<void(size_t)> fill = [&](size_t i) {
        if (i == half) {
            Rat val(0);
            for (size_t j = 0; j < half; ++j) val += a[j] * w[j] * w[j];
            partial.try_emplace(val, std::vector<Rat>(w.begin(), w.begin() + static_cast<long>(half)));
            return;
        }
        for (long t = -box; t <= box; ++t) {
            w[i] = Rat(t);
            fill(i + 1);
        }
    };
    fill(0);
    std::optional<std::vector<Rat>> found;
    std::function<bool(size_t)> scan = [&](size_t i) -> bool {
        if (i == n) {
            Rat val(0);
            for (size_t j = half; j < n; ++j) val += a[j] * w[j] * w[j];
            auto it = partial.find(x - val);
            if (it == partial.end()) return false;
            std::vector<Rat> full = it->second;
            full.insert(full.end(), w.begin() + static_cast<long>(half), w.end());
            bool nonzero = false;
            for (const Rat& c : full) nonzero = nonzero || c != 0;
            if (!nonzero) return false;
            found = full;
            return true;
        }
        for (long t = -box; t <= box; ++t) {
            w[i] = Rat(t);
            if (scan(i + 1)) return true;
        }
        return false;
    };
    scan(half);
    return found;
}

namespace {

bool recognized_pfister(const DiagonalForm& q)
{
    switch (q.rank()) {
        case 1: return is_square_rat(q.entries().front());
        case 2: return represents(q, Rat(1), Field::global());
        case 4: return invariants(q).disc.is_trivial() && represents(q, Rat(1), Field::global());
        case 8: return in_fundamental_power(q, 3) && represents(q, Rat(1), Field::global());
        default: return false;
    }
}

NormMembershipVerdict decide_by_tensor(const DiagonalForm& base, const Rat& x, const Field& field,
                                       const std::string& how)
{
    DiagonalForm t = direct_sum(base, scale(-x, base));   // base (x) <1,-x>
    bool iso = is_isotropic(t, field);
    bool hyp = is_hyperbolic(t, field);
    if (iso != hyp)
        throw std::logic_error("norm_member: isotropy/hyperbolicity disagree on a Pfister multiple");
    NormMembershipVerdict v;
    if (iso) {
        v.answer = NormMembershipVerdict::Answer::Member;
        v.reason = how + " (x) <1,-x> is isotropic (and hyperbolic) over " + field.str();
        if (field.is_global() && base.rank() <= 4)
            v.witness = find_representation(base, x, 6);
    } else {
        v.answer = NormMembershipVerdict::Answer::NonMember;
        v.reason = how + " (x) <1,-x> is anisotropic over " + field.str();
    }
    return v;
}

} // namespace

NormMembershipVerdict norm_member(const DiagonalForm& q, const Rat& x, const Field& field,
                                  const std::optional<PfisterForm>& ambient)
{
    if (x == 0) throw domain_error("norm_member: zero element");
    if (is_isotropic(q, field)) {
        NormMembershipVerdict v;
        v.answer = NormMembershipVerdict::Answer::Member;
        v.reason = "q is isotropic over " + field.str() + "; N_q = k*";
        return v;
    }
    if (ambient) {
        bool neighbor = false;
        try {
            neighbor = is_pfister_neighbor(q, *ambient);
        } catch (const domain_error&) {
            neighbor = false;
        }
        if (!neighbor) {
            NormMembershipVerdict v;
            v.reason = "q is not a certified neighbor of the supplied Pfister form";
            return v;
        }
        return decide_by_tensor(expand(*ambient), x, field, "ambient Pfister form");
    }
    if (!recognized_pfister(q)) {
        NormMembershipVerdict v;
        v.reason = "q is neither isotropic, a Pfister form, nor a certified neighbor";
        return v;
    }
    return decide_by_tensor(q, x, field, "q");
}

bool norm_group_closure_check(const PfisterForm& p, const std::vector<Rat>& samples, const Field& field)
{
    DiagonalForm q = expand(p);
    std::vector<Rat> represented;
    for (const Rat& x : samples)
        if (x != 0 && represents(q, x, field)) represented.push_back(x);
    for (const Rat& x : represented)
        for (const Rat& y : represented)
            if (!norm_member(q, x * y, field).is_member()) return false;
    return true;
}

QuaternionAlgebra::QuaternionAlgebra(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b))
{
    if (a_ == 0 || b_ == 0) throw domain_error("QuaternionAlgebra: zero symbol entry");
}

DiagonalForm QuaternionAlgebra::norm_form() const
{
    return DiagonalForm({Rat(1), -a_, -b_, a_ * b_});
}

std::vector<Place> ramified_places(const QuaternionAlgebra& D)
{
    std::vector<Place> s = hilbert_support(D.a(), D.b());
    if (s.size() % 2 != 0)
        throw std::logic_error("ramified_places: odd ramification set");   // cannot happen
    return s;
}

bool reduced_norm_member(const QuaternionAlgebra& D, const Rat& x)
{
    if (x == 0) throw domain_error("reduced_norm_member: zero element");
    if (hilbert_symbol(D.a(), D.b(), Place::real()) == -1) return sign(x) > 0;
    return true;
}

CollapseResult adjoin_sqrt_collapse(const DiagonalForm& q, const Rat& d, const Field& field)
{
    if (d == 0) throw domain_error("adjoin_sqrt_collapse: zero d");
    bool trivial = field.is_global() ? is_square_rat(d) : is_local_square(d, field.place());
    if (trivial) return CollapseResult{q, true};
    std::vector<Rat> entries;
    for (const Rat& e : q.entries()) {
        Int r0 = squarefree_part(e).rep;
        Int r1 = squarefree_part(e * d).rep;
        if (abs(r1) < abs(r0))
            entries.push_back(Rat(r1));
        else if (abs(r1) == abs(r0) && sign(r1) > 0)   // d ~ -1: canonical positive pick
            entries.push_back(Rat(r1));
        else
            entries.push_back(e);
    }
    return CollapseResult{DiagonalForm(std::move(entries)), false};
}

} // namespace qflab
