#include "qflab/cli.hpp"

#include "qflab/obstruction.hpp"
#include "qflab/textio.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <ostream>

namespace qflab::cli {

namespace {

using nlohmann::ordered_json;

Field field_of(const PlaceSelector& sel)
{
    switch (sel.kind) {
        case PlaceSelector::Kind::Global: return Field::global();
        case PlaceSelector::Kind::Real: return Field::at(Place::real());
        case PlaceSelector::Kind::Finite: return Field::at(*sel.place);
        default: throw domain_error("'all' is not a single completion");
    }
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

ordered_json invariants_json(const FormInvariants& inv)
{
    ordered_json j;
    j["rank"] = inv.rank;
    j["disc"] = inv.disc.rep.get_str();
    j["signature"] = inv.signature;
    j["hasse_minus"] = ordered_json::array();
    for (const auto& [v, h] : inv.hasse_minus) j["hasse_minus"].push_back(v.str());
    return j;
}

int run_impl(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"exact quadratic-form arithmetic and zero-cycle obstruction checking over Q"};
    app.name("qflab");
    app.require_subcommand(1);
    app.fallthrough();   // allow --json after the subcommand
    int exit_code = 0;
    bool json = false;
    app.add_flag("--json", json, "machine-readable output");

    // ---- qf ----------------------------------------------------------
    auto* qf = app.add_subcommand("qf", "diagonal quadratic forms over Q");
    qf->require_subcommand(1);

    std::string form_str, form2_str, place_str = "global", a_str, b_str;

    auto* inv_cmd = qf->add_subcommand("invariants", "rank, discriminant, Hasse symbols, signature");
    inv_cmd->add_option("form", form_str, "comma-separated entries, e.g. 1,-2,3,-6")->required();
    inv_cmd->callback([&] {
        DiagonalForm q = parse_form(form_str);
        FormInvariants inv = invariants(q);
        if (json) {
            out << invariants_json(inv).dump(2) << "\n";
            return;
        }
        out << "rank: " << inv.rank << "\n";
        out << "disc: " << inv.disc.rep.get_str() << "\n";
        out << "signature: " << inv.signature << "\n";
        out << "hasse -1 at:";
        for (const auto& [v, h] : inv.hasse_minus) out << " " << v.str();
        out << "\n";
    });

    auto* iso_cmd = qf->add_subcommand("isotropy", "isotropy over a completion or over Q");
    iso_cmd->add_option("form", form_str)->required();
    iso_cmd->add_option("--place", place_str, "real, a prime, global, or all")->required();
    iso_cmd->callback([&] {
        DiagonalForm q = parse_form(form_str);
        PlaceSelector sel = parse_place_selector(place_str);
        if (sel.kind == PlaceSelector::Kind::All) {
            ordered_json j;
            std::vector<Place> places = candidate_places(q.entries());
            for (const Place& v : places) {
                bool b = is_isotropic(q, v);
                if (json)
                    j[v.str()] = b;
                else
                    out << v.str() << ": " << bool_str(b) << "\n";
            }
            bool g = is_isotropic_global(q);
            if (json) {
                j["global"] = g;
                out << j.dump(2) << "\n";
            } else {
                out << "global: " << bool_str(g) << "\n";
            }
            return;
        }
        bool b = is_isotropic(q, field_of(sel));
        if (json)
            out << ordered_json{{"isotropic", b}}.dump(2) << "\n";
        else
            out << bool_str(b) << "\n";
    });

    auto* isom_cmd = qf->add_subcommand("isometric", "isometry of two forms");
    isom_cmd->add_option("form", form_str)->required();
    isom_cmd->add_option("form2", form2_str)->required();
    isom_cmd->add_option("--place", place_str, "real, a prime, or global")->required();
    isom_cmd->callback([&] {
        DiagonalForm q = parse_form(form_str);
        DiagonalForm r = parse_form(form2_str);
        bool b = is_isometric(q, r, field_of(parse_place_selector(place_str)));
        if (json)
            out << ordered_json{{"isometric", b}}.dump(2) << "\n";
        else
            out << bool_str(b) << "\n";
    });

    auto* witt_cmd = qf->add_subcommand("witt", "Witt decomposition");
    witt_cmd->add_option("form", form_str)->required();
    witt_cmd->add_option("--place", place_str, "real, a prime, or global")->required();
    witt_cmd->callback([&] {
        DiagonalForm q = parse_form(form_str);
        WittClass w = witt_decompose(q, field_of(parse_place_selector(place_str)));
        if (json) {
            ordered_json j;
            j["witt_index"] = w.witt_index;
            if (w.anisotropic_kernel)
                j["kernel"] = form_to_string(*w.anisotropic_kernel);
            else
                j["kernel"] = nullptr;
            out << j.dump(2) << "\n";
            return;
        }
        out << "index " << w.witt_index << ", kernel ";
        if (w.anisotropic_kernel)
            out << form_to_string(*w.anisotropic_kernel);
        else
            out << "empty";
        out << "\n";
    });

    auto* hil_cmd = qf->add_subcommand("hilbert", "Hilbert symbol (a,b)_v");
    hil_cmd->add_option("a", a_str)->required();
    hil_cmd->add_option("b", b_str)->required();
    hil_cmd->add_option("--place", place_str, "real, a prime, or all")->required();
    hil_cmd->callback([&] {
        Rat a = parse_rational(a_str);
        Rat b = parse_rational(b_str);
        PlaceSelector sel = parse_place_selector(place_str);
        if (sel.kind == PlaceSelector::Kind::Global) throw domain_error("hilbert symbols are local; use --place all");
        if (sel.kind == PlaceSelector::Kind::All) {
            ordered_json j;
            for (const Place& v : candidate_places({a, b})) {
                int s = hilbert_symbol(a, b, v);
                if (json)
                    j[v.str()] = s;
                else
                    out << v.str() << ": " << (s > 0 ? "+1" : "-1") << "\n";
            }
            if (json) out << j.dump(2) << "\n";
            return;
        }
        int s = hilbert_symbol(a, b, *sel.place);
        if (json)
            out << ordered_json{{"symbol", s}}.dump(2) << "\n";
        else
            out << (s > 0 ? "+1" : "-1") << "\n";
    });

    auto* ap_cmd = qf->add_subcommand("anisotropic-places", "exact set of anisotropic places (rank >= 3)");
    ap_cmd->add_option("form", form_str)->required();
    ap_cmd->callback([&] {
        DiagonalForm q = parse_form(form_str);
        std::vector<Place> places = anisotropic_places(q);
        if (json) {
            ordered_json j = ordered_json::array();
            for (const Place& v : places) j.push_back(v.str());
            out << j.dump(2) << "\n";
            return;
        }
        bool first = true;
        for (const Place& v : places) {
            if (!first) out << " ";
            out << v.str();
            first = false;
        }
        out << "\n";
    });

    // ---- pf ----------------------------------------------------------
    auto* pf = app.add_subcommand("pf", "Pfister forms and norm groups");
    pf->require_subcommand(1);
    std::string pfister_str, x_str;
    auto* nm_cmd = pf->add_subcommand("norm-member", "membership of x in the value group of a Pfister form");
    nm_cmd->add_option("pfister", pfister_str, "slots, e.g. <<-2,3>>")->required();
    nm_cmd->add_option("x", x_str)->required();
    nm_cmd->add_option("--place", place_str, "real, a prime, or global")->required();
    nm_cmd->callback([&] {
        PfisterForm p = parse_pfister(pfister_str);
        Rat x = parse_rational(x_str);
        NormMembershipVerdict v = norm_member(expand(p), x, field_of(parse_place_selector(place_str)));
        std::string ans = v.answer == NormMembershipVerdict::Answer::Member      ? "Member"
                          : v.answer == NormMembershipVerdict::Answer::NonMember ? "NonMember"
                                                                                 : "Unknown";
        if (json) {
            ordered_json j;
            j["answer"] = ans;
            j["reason"] = v.reason;
            if (v.witness) {
                ordered_json w = ordered_json::array();
                for (const Rat& c : *v.witness) {
                    std::ostringstream os;
                    os << c;
                    w.push_back(os.str());
                }
                j["witness"] = w;
            }
            out << j.dump(2) << "\n";
        } else {
            out << ans << "\n";
            out << "reason: " << v.reason << "\n";
            if (v.witness) {
                out << "witness:";
                for (const Rat& c : *v.witness) out << " " << c;
                out << "\n";
            }
        }
        if (v.answer == NormMembershipVerdict::Answer::Unknown) exit_code = 2;
    });

    // ---- curve -------------------------------------------------------
    auto* curve = app.add_subcommand("curve", "hyperelliptic curves y^2 = f(x)");
    curve->require_subcommand(1);
    std::string curve_str, fn_str;
    auto* div_cmd = curve->add_subcommand("divisor", "principal divisor of a function");
    div_cmd->add_option("--curve", curve_str, "equation, e.g. \"y^2=-x*(x+2)*(x+3)\"")->required();
    div_cmd->add_option("--fn", fn_str, "function in x and y")->required();
    div_cmd->callback([&] {
        HyperellipticCurve C = parse_curve(curve_str);
        FunctionElement g = parse_function(fn_str, C);
        Divisor d = principal_divisor(C, g);
        if (json) {
            ordered_json j = ordered_json::array();
            for (const auto& [P, m] : d.support())
                j.push_back(ordered_json{{"point", point_to_string(P)},
                                         {"multiplicity", m},
                                         {"residue_degree", P.residue_degree()}});
            out << j.dump(2) << "\n";
        } else {
            out << divisor_to_string(d) << "\n";
        }
    });

    // ---- hasse -------------------------------------------------------
    auto* hasse = app.add_subcommand("hasse", "local-global checks for zero-cycle classes");
    hasse->require_subcommand(1);
    std::string hform_str, hcurve_str, hfn_str;
    bool over_p1 = false;

    auto* di_cmd = hasse->add_subcommand("delta-image", "membership of a class in the image of delta");
    di_cmd->add_option("--form", hform_str)->required();
    di_cmd->add_option("--curve", hcurve_str)->required();
    di_cmd->add_option("--fn", hfn_str)->required();
    di_cmd->callback([&] {
        DiagonalForm q = parse_form(hform_str);
        HyperellipticCurve C = parse_curve(hcurve_str);
        FunctionElement g = parse_function(hfn_str, C);
        DeltaResult r = delta_image_test(q, g, C);
        std::string s = r == DeltaResult::InImage ? "InImage" : r == DeltaResult::NotInImage ? "NotInImage" : "Unknown";
        if (json)
            out << ordered_json{{"delta_image", s}}.dump(2) << "\n";
        else
            out << s << "\n";
        if (r == DeltaResult::Unknown) exit_code = 2;
    });

    auto* chk_cmd = hasse->add_subcommand("check", "run the injectivity pipeline on an instance");
    chk_cmd->add_option("--form", hform_str)->required();
    auto* copt = chk_cmd->add_option("--curve", hcurve_str);
    chk_cmd->add_flag("--p1", over_p1, "base is the projective line");
    chk_cmd->add_option("--fn", hfn_str)->required();
    chk_cmd->callback([&] {
        DiagonalForm q = parse_form(hform_str);
        std::optional<HyperellipticCurve> C;
        if (!over_p1) {
            if (copt->count() == 0) throw domain_error("hasse check: provide --curve or --p1");
            C = parse_curve(hcurve_str);
        }
        BaseCurve base = over_p1 ? BaseCurve{ProjectiveLine{}} : BaseCurve{*C};
        FibrationInstance inst(q, base);
        FunctionElement g = parse_function(hfn_str, C);
        ChowClassCandidate cand = make_candidate(inst, g);
        if (cand.provenance != DeltaResult::InImage) {
            std::string s = cand.provenance == DeltaResult::NotInImage ? "NotInImage" : "Unknown";
            if (json)
                out << ordered_json{{"delta_image", s}}.dump(2) << "\n";
            else
                out << "candidate is not a CH_0(X/C) class: delta image test = " << s << "\n";
            if (cand.provenance == DeltaResult::Unknown) exit_code = 2;
            return;
        }
        ObstructionReport rep = injectivity_pipeline(inst, cand);
        out << (json ? rep.to_json() : rep.to_text()) << "\n";
        if (rep.global_verdict.find("undecided") != std::string::npos) exit_code = 2;
    });

    auto* p33_cmd = hasse->add_subcommand("prop33", "reproduce the real-place counterexample report");
    p33_cmd->callback([&] {
        ObstructionReport rep = prop33_report();
        out << (json ? rep.to_json() : rep.to_text()) << "\n";
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            // --help
            out << app.help() << "\n";
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    try {
        return run_impl(args, out, err);
    } catch (const ParseError& e) {
        err << "parse error at position " << e.pos << ": " << e.what() << "\n";
        return 1;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace qflab::cli
