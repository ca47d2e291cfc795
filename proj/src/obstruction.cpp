#include "qflab/obstruction.hpp"

#include "qflab/textio.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace qflab {

namespace {

FunctionElement fe_scale(const Rat& c, const FunctionElement& g)
{
    RatFn cf{Poly(c)};
    return FunctionElement{g.u * cf, g.v * cf};
}

std::string rat_str(const Rat& x)
{
    std::ostringstream os;
    os << x;
    return os.str();
}

} // namespace

FibrationInstance::FibrationInstance(DiagonalForm form, BaseCurve c) : q(std::move(form)), base(std::move(c))
{
    if (q.rank() != 3 && q.rank() != 4)
        throw domain_error("FibrationInstance: generic fiber rank must be 3 or 4 (dim X = 2 or 3)");
}

std::string certificate_kind(const Certificate& c)
{
    if (std::holds_alternative<RepresentationWitness>(c)) return "representation-witness";
    if (std::holds_alternative<ResidueObstruction>(c)) return "residue-obstruction";
    return "external-fact";
}

std::string verdict_to_string(LocalVerdict v)
{
    switch (v) {
        case LocalVerdict::Trivial: return "trivial";
        case LocalVerdict::Nontrivial: return "nontrivial";
        default: return "unknown";
    }
}

// ---- delta on the projective line ----------------------------------------

namespace {

DeltaResult delta_p1(const DiagonalForm& q, const RatFn& g)
{
    if (g.is_zero()) throw domain_error("delta_p1: zero function");
    bool isotropic = is_isotropic_global(q);
    bool unknown = false;
    bool nontrivial = false;
    auto consider = [&](int resdeg, long mult) {
        if (mult % 2 == 0) return;
        if (resdeg == 1) {
            if (!isotropic) nontrivial = true;
        } else {
            unknown = true;
        }
    };
    if (g.num.degree() > 0)
        for (const auto& [r, e] : factor_poly(g.num).factors) consider(r.degree(), e);
    if (g.den.degree() > 0)
        for (const auto& [r, e] : factor_poly(g.den).factors) consider(r.degree(), -e);
    consider(1, static_cast<long>(g.den.degree()) - g.num.degree());   // infinity
    if (nontrivial) return DeltaResult::NotInImage;
    return unknown ? DeltaResult::Unknown : DeltaResult::InImage;
}

// valuation and unit-part value of a rational function at x0 or at infinity
struct P1Leading {
    long val;
    Rat lead;
};

P1Leading p1_local_leading(const RatFn& g, const std::optional<Rat>& x0)
{
    if (g.is_zero()) throw domain_error("p1_local_leading: zero function");
    if (!x0) {
        long val = static_cast<long>(g.den.degree()) - g.num.degree();
        return {val, g.num.lc() / g.den.lc()};
    }
    Poly lin(std::vector<Rat>{-*x0, Rat(1)});
    Poly num = g.num, den = g.den;
    long v = 0;
    while (true) {
        auto [qt, rm] = divmod(num, lin);
        if (!rm.is_zero()) break;
        num = qt;
        ++v;
    }
    while (true) {
        auto [qt, rm] = divmod(den, lin);
        if (!rm.is_zero()) break;
        den = qt;
        --v;
    }
    return {v, num.eval(*x0) / den.eval(*x0)};
}

} // namespace

ChowClassCandidate make_candidate(const FibrationInstance& inst, const FunctionElement& g)
{
    ChowClassCandidate cand;
    cand.g = g;
    if (inst.over_p1()) {
        if (!g.v.is_zero()) throw domain_error("make_candidate: functions on P^1 cannot involve y");
        cand.provenance = delta_p1(inst.q, g.u);
    } else {
        cand.provenance = delta_image_test(inst.q, g, inst.curve());
    }
    if (cand.provenance == DeltaResult::Unknown) {
        // a represented class is zero, hence in the image of delta, even when
        // fiber indices over nontrivial residue fields are undecidable
        if (find_function_witness(inst, inst.q, g)) cand.provenance = DeltaResult::InImage;
    }
    return cand;
}

// ---- residues -------------------------------------------------------------

std::vector<Rat> second_residue(const HyperellipticCurve& C, const std::vector<FunctionElement>& entries,
                                const ClosedPoint& P)
{
    if (!P.is_rational()) throw domain_error("second_residue: residue degree > 1");
    std::vector<Rat> out;
    for (const FunctionElement& e : entries) {
        if (e.is_zero()) throw domain_error("second_residue: singular entry");
        if (e.is_constant()) continue;   // valuation 0
        LocalLeading ll = local_leading(C, P, e);
        if (ll.valuation % 2 != 0) out.push_back(ll.leading);
    }
    return out;
}

std::vector<Rat> second_residue_p1(const std::vector<RatFn>& entries, const P1Point& P)
{
    std::optional<Rat> x0;
    if (!P.at_infinity) x0 = P.x0;
    std::vector<Rat> out;
    for (const RatFn& e : entries) {
        P1Leading ll = p1_local_leading(e, x0);
        if (ll.val % 2 != 0) out.push_back(ll.lead);
    }
    return out;
}

namespace {

bool residue_form_anisotropic(const std::vector<Rat>& res, const Field& field)
{
    if (res.empty()) return false;
    DiagonalForm r(res);
    return !is_isotropic(r, field);
}

} // namespace

bool verify_nonmembership_certificate_p1(const DiagonalForm& q, const RatFn& g,
                                         const std::vector<P1Point>& points, const Field& field)
{
    if (g.is_zero()) throw domain_error("verify_nonmembership_certificate_p1: zero function");
    if (points.empty()) return false;
    for (const Rat& mu : {Rat(1), Rat(-1)}) {
        bool covered = false;
        for (const P1Point& P : points) {
            std::vector<RatFn> entries;
            for (const Rat& a : q.entries()) entries.push_back(RatFn{Poly(a)});
            for (const Rat& a : q.entries()) entries.push_back(g * RatFn{Poly(Rat(-mu * a))});
            if (residue_form_anisotropic(second_residue_p1(entries, P), field)) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;
    }
    return true;
}

bool verify_nonmembership_certificate(const DiagonalForm& q, const FunctionElement& g,
                                      const ResidueObstruction& cert, const HyperellipticCurve& C,
                                      const Field& field)
{
    if (g.is_zero()) throw domain_error("verify_nonmembership_certificate: zero function");
    if (cert.points.empty()) return false;
    for (const Rat& mu : {Rat(1), Rat(-1)}) {
        bool covered = false;
        for (const ClosedPoint& P : cert.points) {
            if (!P.is_rational()) continue;   // rejected upstream
            std::vector<FunctionElement> entries;
            for (const Rat& a : q.entries()) entries.push_back(fe_constant(a));
            FunctionElement scaled = fe_scale(-mu, g);
            for (const Rat& a : q.entries()) entries.push_back(fe_scale(a, scaled));
            std::vector<Rat> res = second_residue(C, entries, P);
            if (residue_form_anisotropic(res, field)) {
                covered = true;
                break;
            }
        }
        if (!covered) return false;   // parity class of mu not covered
    }
    return true;
}

// ---- witness search -------------------------------------------------------

namespace {

// verify q(w) = mu g exactly
bool verify_witness(const FibrationInstance& inst, const DiagonalForm& q, const RepresentationWitness& w,
                    const FunctionElement& g)
{
    if (w.vec.size() != q.entries().size() || w.mu == 0) return false;
    FunctionElement acc = fe_constant(Rat(0));
    acc.u = RatFn();
    for (size_t i = 0; i < w.vec.size(); ++i) {
        const FunctionElement& wi = w.vec[i];
        if (inst.over_p1() && !wi.v.is_zero()) return false;
        FunctionElement sq;
        if (inst.over_p1())
            sq = FunctionElement{wi.u * wi.u, RatFn()};
        else
            sq = fe_mul(inst.curve(), wi, wi);
        sq = fe_scale(q.entries()[i], sq);
        acc = fe_add(acc, sq);
    }
    return acc == fe_scale(w.mu, g);
}

// factor a rational function as c * H^2 when every multiplicity is even
std::optional<std::pair<Rat, RatFn>> square_part(const RatFn& g)
{
    if (g.is_zero()) return std::nullopt;
    Poly hn(Rat(1)), hd(Rat(1));
    PolyFactors fn = factor_poly(g.num);
    for (const auto& [r, e] : fn.factors) {
        if (e % 2 != 0) return std::nullopt;
        for (int i = 0; i < e / 2; ++i) hn = hn * r;
    }
    PolyFactors fd = factor_poly(g.den);
    for (const auto& [r, e] : fd.factors) {
        if (e % 2 != 0) return std::nullopt;
        for (int i = 0; i < e / 2; ++i) hd = hd * r;
    }
    Rat c = fn.unit / fd.unit;
    return std::make_pair(c, RatFn(hn, hd));
}

std::vector<Poly> witness_pool(int max_deg, long coeff_bound)
{
    std::vector<Poly> pool;
    std::vector<Rat> coeffs(static_cast<size_t>(max_deg) + 1, Rat(0));
    std::function<void(size_t)> rec = [&](size_t i) {
        if (i == coeffs.size()) {
            pool.push_back(Poly(coeffs));
            return;
        }
        for (long c = -coeff_bound; c <= coeff_bound; ++c) {
            coeffs[i] = Rat(c);
            rec(i + 1);
        }
    };
    rec(0);
    return pool;
}

// meet-in-the-middle polynomial representation search for rank <= 4
std::optional<std::vector<Poly>> poly_representation(const DiagonalForm& q, const Poly& target, int max_deg,
                                                     long coeff_bound)
{
    size_t n = q.entries().size();
    if (n > 4) return std::nullopt;
    std::vector<Poly> pool = witness_pool(max_deg, coeff_bound);
    size_t half = n / 2;
    std::map<Poly, std::vector<Poly>> table;
    std::vector<Poly> w(n);
    std::function<void(size_t, Poly)> fill = [&](size_t i, Poly acc) {
        if (i == half) {
            table.try_emplace(acc, std::vector<Poly>(w.begin(), w.begin() + static_cast<long>(half)));
            return;
        }
        for (const Poly& c : pool) {
            w[i] = c;
            fill(i + 1, acc + c * c * q.entries()[i]);
        }
    };
    fill(0, Poly());
    std::optional<std::vector<Poly>> found;
    std::function<bool(size_t, Poly)> scan = [&](size_t i, Poly acc) -> bool {
        if (i == n) {
            auto it = table.find(target - acc);
            if (it == table.end()) return false;
            std::vector<Poly> full = it->second;
            full.insert(full.end(), w.begin() + static_cast<long>(half), w.end());
            bool nonzero = false;
            for (const Poly& c : full) nonzero = nonzero || !c.is_zero();
            if (!nonzero) return false;
            found = full;
            return true;
        }
        for (const Poly& c : pool) {
            w[i] = c;
            if (scan(i + 1, acc + c * c * q.entries()[i])) return true;
        }
        return false;
    };
    scan(half, Poly());
    return found;
}

} // namespace

std::optional<RepresentationWitness> find_function_witness(const FibrationInstance& inst, const DiagonalForm& q,
                                                           const FunctionElement& g)
{
    for (const Rat& mu : {Rat(1), Rat(-1)}) {
        FunctionElement target = fe_scale(mu, g);
        if (!target.v.is_zero() || target.u.is_zero()) continue;
        // route 1: target = c * H^2, lift a rational representation of c
        if (auto sp = square_part(target.u)) {
            const auto& [c, H] = *sp;
            if (auto w = find_representation(q, c, 8)) {
                RepresentationWitness wit;
                wit.mu = mu;
                for (const Rat& wi : *w) wit.vec.push_back(fe_from_x(RatFn(Poly(wi)) * H));
                if (verify_witness(inst, q, wit, g)) return wit;
            }
        }
        // route 2: bounded polynomial search for small polynomial targets
        if (target.u.den.degree() == 0 && target.u.num.degree() <= 4 && q.rank() <= 4) {
            Poly t = target.u.num * (Rat(1) / target.u.den.coeff(0));
            for (auto [deg, bound] : {std::pair<int, long>{1, 3}, {2, 2}}) {
                if (auto polys = poly_representation(q, t, deg, bound)) {
                    RepresentationWitness wit;
                    wit.mu = mu;
                    for (const Poly& p : *polys) wit.vec.push_back(fe_from_x(RatFn(p)));
                    if (verify_witness(inst, q, wit, g)) return wit;
                }
            }
        }
    }
    return std::nullopt;
}

// ---- per-place verdicts ----------------------------------------------------

PlaceVerdict local_triviality(const FibrationInstance& inst, const ChowClassCandidate& cand, const Place& v)
{
    if (cand.provenance != DeltaResult::InImage)
        throw domain_error("local_triviality: candidate is not in the image of delta");
    PlaceVerdict out{v, LocalVerdict::Unknown, "none", false, ""};
    if (is_isotropic(inst.q, v)) {
        out.verdict = LocalVerdict::Trivial;
        out.machine_verified = true;
        out.note = "q isotropic over Q_" + v.str() + "; N_q(k_v(C)) = k_v(C)* and the local group vanishes";
        return out;
    }
    auto it = cand.local_certificates.find(v);
    if (it == cand.local_certificates.end()) {
        out.note = "q anisotropic over Q_" + v.str() + "; no certificate supplied";
        return out;
    }
    const Certificate& cert = it->second;
    out.certificate = certificate_kind(cert);
    if (const auto* w = std::get_if<RepresentationWitness>(&cert)) {
        if (verify_witness(inst, inst.q, *w, cand.g)) {
            out.verdict = LocalVerdict::Trivial;
            out.machine_verified = true;
            out.note = "representation witness verifies mu*g as a value of q over the function field";
        } else {
            out.note = "representation witness failed verification";
        }
        return out;
    }
    if (const auto* r = std::get_if<ResidueObstruction>(&cert)) {
        bool ok = inst.over_p1()
                      ? verify_nonmembership_certificate_p1(inst.q, cand.g.u, r->p1_points, Field::at(v))
                      : verify_nonmembership_certificate(inst.q, cand.g, *r, inst.curve(), Field::at(v));
        if (ok) {
            out.verdict = LocalVerdict::Nontrivial;
            out.machine_verified = true;
            out.note = "second residues anisotropic at the named points for both parities of mu";
        } else {
            out.note = "residue obstruction certificate rejected";
        }
        return out;
    }
    const auto& fact = std::get<ExternalFact>(cert);
    out.verdict = fact.asserts_membership ? LocalVerdict::Trivial : LocalVerdict::Nontrivial;
    out.machine_verified = false;
    out.note = "external fact: " + fact.citation;
    return out;
}

// ---- reports ----------------------------------------------------------------

std::string ObstructionReport::to_text() const
{
    std::ostringstream os;
    os << "instance: q = " << instance_form << " over " << instance_curve << "\n";
    os << "candidate: " << candidate << "\n";
    os << "places:\n";
    for (const PlaceVerdict& p : places) {
        os << "  " << p.place.str() << ": " << verdict_to_string(p.verdict) << " [certificate " << p.certificate
           << ", " << (p.machine_verified ? "machine-verified" : "not machine-verified") << "] " << p.note << "\n";
    }
    if (!other_places.empty()) os << "other places: " << other_places << "\n";
    os << "global: " << global_verdict << "\n";
    for (const std::string& s : theorem_citations) os << "cites: " << s << "\n";
    for (const std::string& s : assumed_facts) os << "assumed: " << s << "\n";
    for (const std::string& s : verified_steps) os << "verified: " << s << "\n";
    return os.str();
}

std::string ObstructionReport::to_json() const
{
    nlohmann::ordered_json j;
    j["instance"] = {{"form", instance_form}, {"curve", instance_curve}};
    j["candidate"] = candidate;
    j["places"] = nlohmann::ordered_json::array();
    for (const PlaceVerdict& p : places) {
        nlohmann::ordered_json e;
        e["place"] = p.place.str();
        e["verdict"] = verdict_to_string(p.verdict);
        e["certificate_kind"] = p.certificate;
        e["machine_verified"] = p.machine_verified;
        e["note"] = p.note;
        j["places"].push_back(e);
    }
    j["global"] = {{"verdict", global_verdict}, {"theorem_citations", theorem_citations}};
    j["assumed_facts"] = assumed_facts;
    j["verified_steps"] = verified_steps;
    j["other_places"] = other_places;
    return j.dump(2);
}

namespace {

std::string base_to_string(const FibrationInstance& inst)
{
    return inst.over_p1() ? std::string("P^1") : curve_to_string(inst.curve());
}

} // namespace

ObstructionReport injectivity_pipeline(const FibrationInstance& inst, const ChowClassCandidate& cand)
{
    if (cand.provenance != DeltaResult::InImage)
        throw domain_error("injectivity_pipeline: candidate is not in the image of delta");
    const DiagonalForm& q = inst.q;
    ObstructionReport rep;
    rep.instance_form = form_to_string(q);
    rep.instance_curve = base_to_string(inst);
    rep.candidate = function_to_string(cand.g);

    // (1) normalize the fiber to <1,a,b,abd>
    Rat q1 = q.entries().front();
    DiagonalForm qn = scale(Rat(1) / q1, q);
    rep.verified_steps.push_back("(1) fiber scaled by " + rat_str(Rat(1) / q1) +
                                 " to <1,a,b,...>; N_q is invariant under scaling");
    Rat a = qn.entries()[1];
    Rat b = qn.entries()[2];
    SquareClass d{Int(1)};
    if (q.rank() == 4) {
        d = invariants(qn).disc;
    } else {
        PfisterForm ambient({a, b});
        if (!is_pfister_neighbor(qn, ambient))
            throw std::logic_error("injectivity_pipeline: rank-3 fiber is not a neighbor of <<a,b>>");
        rep.verified_steps.push_back("(1') rank-3 fiber certified as a neighbor of <<" + rat_str(a) + "," +
                                     rat_str(b) + ">>; the norm groups agree");
    }

    // (2) the quadratic extension L = Q(sqrt(d))
    if (d.is_trivial()) {
        DiagonalForm pf = expand(PfisterForm({a, b}));
        bool ok = q.rank() == 3 || is_isometric(qn, pf, Field::global());
        rep.verified_steps.push_back(std::string("(2) disc trivial, L = Q; fiber form is the Pfister form <<") +
                                     rat_str(a) + "," + rat_str(b) + ">> " +
                                     (ok ? "(isometry machine-checked)" : "(isometry check FAILED)"));
        if (!ok) throw std::logic_error("injectivity_pipeline: expected Pfister isometry failed");
    } else {
        // both sides collapsed to canonical Q(sqrt(d))-class representatives;
        // a Q-isometry of the collapsed forms certifies the L(C)-isometry
        CollapseResult col = adjoin_sqrt_collapse(qn, Rat(d.rep), Field::global());
        DiagonalForm pf = tensor(DiagonalForm({Rat(1), a}), DiagonalForm({Rat(1), b}));
        CollapseResult colpf = adjoin_sqrt_collapse(pf, Rat(d.rep), Field::global());
        bool ok = is_isometric(col.form, colpf.form, Field::global());
        rep.verified_steps.push_back("(2) L = Q(sqrt(" + d.rep.get_str() + ")); over L(C) the fiber collapses to <1,a>(x)<1,b> " +
                                     std::string(ok ? "(collapse isometry machine-checked); " : "(collapse FAILED); ") +
                                     (sign(d.rep) > 0 ? "L has real places" : "L is totally imaginary"));
        if (!ok) throw std::logic_error("injectivity_pipeline: sqrt(d) collapse is not the expected Pfister form");
    }

    // global witness attempt: settles every local hypothesis at once
    std::optional<RepresentationWitness> gw = find_function_witness(inst, q, cand.g);
    if (gw)
        rep.verified_steps.push_back("(5') representation witness found by bounded search: q(w) = " +
                                     rat_str(gw->mu) + " * g over Q(C)");

    bool all_hypotheses = true;
    bool any_assumed = false;
    bool any_nontrivial = false;

    // (3) real place: sign selection of mu
    {
        PlaceVerdict pv{Place::real(), LocalVerdict::Unknown, "none", false, ""};
        if (is_isotropic(q, Place::real())) {
            pv.verdict = LocalVerdict::Trivial;
            pv.machine_verified = true;
            pv.note = "q isotropic over R: N_q(R(C)) = R(C)*; hypothesis automatic, mu = 1";
            rep.verified_steps.push_back("(3) real hypothesis automatic (q isotropic over R)");
        } else if (gw) {
            pv.verdict = LocalVerdict::Trivial;
            pv.machine_verified = true;
            pv.certificate = "representation-witness";
            pv.note = "mu = " + rat_str(gw->mu) + " matches the real sign; witness verifies mu*g in N_q(R(C))";
            rep.verified_steps.push_back("(3) mu = " + rat_str(gw->mu) +
                                         " selected; real membership verified by the witness");
        } else {
            PlaceVerdict lt = local_triviality(inst, cand, Place::real());
            pv = lt;
            if (lt.verdict == LocalVerdict::Unknown) all_hypotheses = false;
            if (lt.verdict == LocalVerdict::Nontrivial) any_nontrivial = true;
            if (lt.certificate == "external-fact") any_assumed = true;
        }
        rep.places.push_back(pv);
    }

    // (4) finite places: automatic where q is isotropic; certificates elsewhere
    std::vector<Place> aniso = anisotropic_places(q);
    for (const Place& v : aniso) {
        if (v.is_real()) continue;
        PlaceVerdict pv{v, LocalVerdict::Unknown, "none", false, ""};
        if (gw) {
            pv.verdict = LocalVerdict::Trivial;
            pv.machine_verified = true;
            pv.certificate = "representation-witness";
            pv.note = "global witness verifies mu*g in N_q(Q_" + v.str() + "(C))";
        } else {
            pv = local_triviality(inst, cand, v);
            if (pv.verdict == LocalVerdict::Unknown) all_hypotheses = false;
            if (pv.verdict == LocalVerdict::Nontrivial) any_nontrivial = true;
            if (pv.certificate == "external-fact" && pv.verdict != LocalVerdict::Unknown) any_assumed = true;
        }
        rep.places.push_back(pv);
    }
    rep.other_places = "trivial: q is isotropic over Q_v outside the listed places (machine-checked scan), so "
                       "k_v* N_q(k_v(C)) = k_v(C)*";
    rep.verified_steps.push_back("(4) finite places with isotropic fiber have automatic hypotheses; constants are "
                                 "norms at every finite place since rank(q (x) <1,-c>) >= 5 forces local isotropy");

    // (5) conclusion through the quadratic extension
    rep.theorem_citations.push_back(
        "Arason-Elman-Jacob, Math. Ann. 274 (1986), Thm 4: I^3 L(C) -> prod_w I^3 L_w(C) is injective");
    rep.theorem_citations.push_back(
        "Colliot-Thelene--Skorobogatov, K-Theory 7 (1993), Prop 2.3: N_q(L(C)) cap k(C)* = N_q(k(C))");
    std::string inj = "Phi is injective for this instance (generic fiber defined over Q): q (x) <1,-mu f> is "
                      "hyperbolic over every L_w(C), AEJ passes hyperbolicity to L(C), and the norm intersection "
                      "returns mu f to N_q(k(C))";
    std::string status;
    if (gw) {
        status = "candidate class is zero: representation witness machine-verified";
    } else if (any_nontrivial) {
        status = "candidate is locally nontrivial, hence nonzero in CH_0(X/C); consistent with injectivity";
    } else if (all_hypotheses) {
        status = std::string("candidate class is zero: local membership hypotheses hold at every place") +
                 (any_assumed ? " [conditional on the assumed facts listed]" : "");
    } else {
        status = "candidate undecided: local membership hypotheses missing at one or more places";
    }
    rep.global_verdict = inj + "; " + status;
    return rep;
}

ObstructionReport prop33_report()
{
    // q = <1,-2,3,-6> over y^2 = -x(x+2)(x+3), candidate x
    DiagonalForm q({Rat(1), Rat(-2), Rat(3), Rat(-6)});
    HyperellipticCurve C(Poly(std::vector<Rat>{Rat(0), Rat(-6), Rat(-5), Rat(-1)}));
    FunctionElement gx = fe_from_x(RatFn(Poly::x()));

    ObstructionReport rep;
    rep.instance_form = form_to_string(q);
    rep.instance_curve = curve_to_string(C);
    rep.candidate = "x";

    // (a) the real local group vanishes
    bool real_iso = is_isotropic(q, Place::real());
    if (!real_iso) throw std::logic_error("prop33_report: q must be isotropic over R");
    rep.places.push_back({Place::real(), LocalVerdict::Trivial, "none", true,
                          "q isotropic over R (signature 0): N_q(R(C)) = R(C)* and CH_0(X_R/C_R) = 0"});
    rep.verified_steps.push_back("(a) q = <1,-2,3,-6> is isotropic over R; the real local group vanishes");

    // (b) div_C(x) = 2(0,0) - 2(inf), fiber indices 2, class in Im delta
    Divisor div = principal_divisor(C, gx);
    ClosedPoint origin = ClosedPoint::finite(Poly::x(), ClosedPoint::Branch::Ramified);
    ClosedPoint inf = ClosedPoint::infinite_ramified();
    bool div_ok = div.support().size() == 2 && div.multiplicity(origin) == 2 && div.multiplicity(inf) == -2;
    if (!div_ok) throw std::logic_error("prop33_report: unexpected divisor of x");
    FiberIndex i0 = fiber_index(q, origin);
    FiberIndex iinf = fiber_index(q, inf);
    DeltaResult delta = delta_image_test(q, gx, C);
    if (i0 != FiberIndex::Two || iinf != FiberIndex::Two || delta != DeltaResult::InImage)
        throw std::logic_error("prop33_report: delta-image step failed");
    rep.verified_steps.push_back("(b) div_C(x) = " + divisor_to_string(div) +
                                 "; both fiber indices are 2 (q anisotropic over Q) and the class of x lies in Im delta");

    // (c) q ~ <1,1,3,3> over Q_3
    DiagonalForm q3({Rat(1), Rat(1), Rat(3), Rat(3)});
    if (!is_isometric(q, q3, Field::at(Place::finite(3))))
        throw std::logic_error("prop33_report: isometry with <1,1,3,3> over Q_3 failed");
    rep.verified_steps.push_back("(c) q is isometric to <1,1,3,3> over Q_3 (rank, disc, Hasse match)");

    // (d) the Q_3 non-membership is consumed as an external fact
    std::string ps = "Parimala-Suresh, Invent. Math. 122 (1995), Prop 6.1: x is not in Q_3* N_q(Q_3(C))";
    rep.places.push_back({Place::finite(3), LocalVerdict::Nontrivial, "external-fact", false,
                          "x not in Q_3* N_q(Q_3(C)); premises (b) and (c) machine-checked"});
    rep.assumed_facts.push_back(ps);

    rep.places.push_back({Place::finite(2), LocalVerdict::Unknown, "none", false,
                          "q anisotropic over Q_2; the class of x at 2 is not decided here"});

    // Remark 3.4: the support of the local groups is {2, 3}
    std::vector<Place> aniso = anisotropic_places(q);
    bool support_ok = aniso.size() == 2 && aniso[0] == Place::finite(2) && aniso[1] == Place::finite(3);
    if (!support_ok) throw std::logic_error("prop33_report: anisotropic support is not {2,3}");
    rep.other_places = "trivial: q is isotropic over R and over Q_p for every prime p except 2 and 3 "
                       "(machine-checked), so those local groups vanish";
    rep.verified_steps.push_back("(support) anisotropic places of q are exactly {2, 3}");

    rep.global_verdict = "Phi_real is not injective: the class of x is nonzero in CH_0(X/C) (nontrivial at 3 by "
                         "the assumed fact, in Im delta by (b)) while CH_0(X_R/C_R) = 0 by (a)";
    rep.theorem_citations.push_back("Colliot-Thelene--Skorobogatov, K-Theory 7 (1993): exact sequence defining delta");
    rep.theorem_citations.push_back("Swan, Proc. AMS 107 (1989): A_0(X_P) = 0 for quadric fibers");
    rep.theorem_citations.push_back("Springer's theorem: fiber degree index is 1 or 2 by rational points on the fiber quadric");
    return rep;
}

} // namespace qflab
