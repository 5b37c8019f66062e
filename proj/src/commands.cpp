#include "ksurf/commands.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "ksurf/coset.hpp"
#include "ksurf/exact.hpp"
#include "ksurf/fpgroup.hpp"
#include "ksurf/obstruct.hpp"
#include "ksurf/pretzel.hpp"
#include "ksurf/seifert.hpp"

namespace ksurf::cli {

namespace {

template <class... Ts>
std::string cat(Ts&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

void add_multiline(report::Section& sec, const std::string& text) {
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) sec.human(line);
}

std::string torsion_str(const fp::AbelianInvariants& ab) {
    std::string out = "[";
    for (std::size_t i = 0; i < ab.torsion.size(); ++i)
        out += (i ? ", " : "") + ab.torsion[i].get_str();
    return out + "]";
}

void report_abelianization(report::Section& sec, const fp::AbelianInvariants& ab,
                           const std::string& prefix) {
    sec.human(cat(prefix, "betti ", ab.betti, ", torsion ", torsion_str(ab), "  (",
                  fp::to_string(ab), ")"));
    sec.kv(prefix.empty() ? "betti" : "subgroup_betti", static_cast<long long>(ab.betti));
    sec.kv(prefix.empty() ? "torsion" : "subgroup_torsion", torsion_str(ab));
}

// "[1,0,3,2];[0,2,1,3]" -> one Perm per ';'-separated bracket list.
std::vector<fp::Perm> parse_perm_images(const std::string& text) {
    std::vector<fp::Perm> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t semi = std::min(text.find(';', pos), text.size());
        const std::string chunk = trim(text.substr(pos, semi - pos));
        if (chunk.size() < 2 || chunk.front() != '[' || chunk.back() != ']')
            throw fp::ParseError("expected [i0,i1,...]", pos);
        std::string body = chunk.substr(1, chunk.size() - 2);
        for (char& c : body)
            if (c == ',') c = ' ';
        std::istringstream is(body);
        std::vector<int> images;
        int v = 0;
        while (is >> v) images.push_back(v);
        if (!is.eof() || images.empty())
            throw fp::ParseError("expected [i0,i1,...]", pos);
        try {
            out.emplace_back(std::move(images));
        } catch (const std::invalid_argument& e) {
            throw fp::ParseError(e.what(), pos);
        }
        if (semi == text.size()) break;
        pos = semi + 1;
    }
    if (out.empty()) throw fp::ParseError("no permutations given", 0);
    return out;
}

void render_verdict(report::Section& sec, const obstruct::Verdict& v,
                    obstruct::Conclusion expected, const GlobalFlags& flags) {
    const bool replay = v.trace.replay();
    if (v.conclusion == expected && replay)
        sec.status = report::Status::Pass;
    else if (v.conclusion == obstruct::Conclusion::Inconclusive)
        sec.status = report::Status::Inconclusive;
    else
        sec.status = report::Status::Fail;

    sec.human("conclusion: " + obstruct::to_string(v.conclusion));
    if (!v.reason.empty()) sec.human("reason: " + v.reason);
    if (!v.note.empty()) sec.human("note: " + v.note);
    sec.human(cat("trace: ", v.trace.lines.size(), " lines, replay ",
                  replay ? "ok" : "FAILED"));
    if (flags.trace) add_multiline(sec, v.trace.str());

    sec.kv("conclusion", obstruct::to_string(v.conclusion));
    if (!v.reason.empty()) sec.kv("reason", v.reason);
    sec.kv("trace_lines", static_cast<long long>(v.trace.lines.size()));
    sec.kv("replay", replay ? "ok" : "failed");
}

}  // namespace

report::Report cmd_group(const std::string& subcommand, const std::string& input,
                         const std::string& subgroup, const GlobalFlags& flags) {
    report::Report rep;

    if (subcommand == "quotient-order") {
        auto& sec = rep.add("group.quotient_order", "order of the permutation group <images>");
        const std::vector<fp::Perm> images = parse_perm_images(input);
        sec.kv("images", static_cast<long long>(images.size()));
        sec.kv("degree", static_cast<long long>(images.front().degree()));
        const std::optional<unsigned long> order = fp::quotient_group_order(images);
        if (!order) {
            sec.status = report::Status::Inconclusive;
            sec.human("closure exceeds the element limit");
            sec.kv("order", "overflow");
        } else {
            sec.human(cat("order ", *order));
            sec.kv("order", static_cast<long long>(*order));
        }
        return rep;
    }

    const fp::Presentation P = fp::parse_presentation(input);

    if (subcommand == "abelianize") {
        auto& sec = rep.add("group.abelianize", "abelianization of " + P.str());
        const fp::AbelianInvariants ab = fp::abelianization(P);
        report_abelianization(sec, ab, "");
        return rep;
    }
    if (subcommand == "deficiency") {
        auto& sec = rep.add("group.deficiency", "deficiency of " + P.str());
        const long d = fp::deficiency(P);
        sec.human(cat("deficiency ", d));
        sec.kv("deficiency", static_cast<long long>(d));
        return rep;
    }
    if (subcommand == "b2bound") {
        auto& sec = rep.add("group.b2bound", "b2 upper bound of " + P.str());
        const std::size_t b = fp::b2_upper_bound(P);
        sec.human(cat("b2 upper bound ", b, " (relators - generators + betti, floored at 0)"));
        sec.kv("b2_upper_bound", static_cast<long long>(b));
        return rep;
    }
    if (subcommand == "todd-coxeter" || subcommand == "schreier") {
        const std::vector<fp::Word> sub = fp::parse_word_list(subgroup, P);
        auto& sec = rep.add(subcommand == "schreier" ? "group.schreier" : "group.todd_coxeter",
                            cat("coset enumeration for ", P.str(), " over a subgroup with ",
                                sub.size(), " generators"));
        sec.kv("subgroup_generators", static_cast<long long>(sub.size()));
        sec.kv("max_cosets", static_cast<long long>(flags.max_cosets));
        const std::optional<fp::CosetTable> table =
            fp::todd_coxeter(P, sub, flags.max_cosets);
        if (!table) {
            sec.status = report::Status::Inconclusive;
            sec.human(cat("enumeration did not close within ", flags.max_cosets, " cosets"));
            sec.kv("index", "overflow");
            return rep;
        }
        if (const auto bad = table->validate(P, sub)) {
            sec.status = report::Status::Fail;
            sec.human("coset table failed validation: " + *bad);
            return rep;
        }
        sec.human(cat("index ", table->coset_count()));
        sec.kv("index", static_cast<long long>(table->coset_count()));
        if (subcommand == "schreier") {
            const fp::SchreierResult rs = fp::reidemeister_schreier(P, *table);
            const fp::Presentation sp = rs.presentation();
            sec.human(cat("schreier generators ", rs.generator_count, ", nonempty relators ",
                          sp.relators().size()));
            sec.kv("schreier_generators", static_cast<long long>(rs.generator_count));
            sec.kv("nonempty_relators", static_cast<long long>(sp.relators().size()));
            report_abelianization(sec, fp::abelianization(sp), "subgroup ");
        }
        return rep;
    }
    throw std::invalid_argument("unknown group subcommand '" + subcommand +
                                "' (abelianize, deficiency, b2bound, todd-coxeter, schreier, "
                                "quotient-order)");
}

report::Report cmd_seifert(const std::string& subcommand, const std::string& input,
                           const GlobalFlags&) {
    report::Report rep;
    const seifert::SeifertInvariants s = seifert::SeifertInvariants::parse(input);

    if (subcommand == "pi1") {
        auto& sec = rep.add("seifert.pi1", "fundamental group of " + s.str());
        const fp::Presentation P = seifert::pi1_presentation(s);
        sec.human(P.str());
        sec.kv("presentation", P.str());
        sec.kv("generators", static_cast<long long>(P.generator_count()));
        sec.kv("relators", static_cast<long long>(P.relators().size()));
        report_abelianization(sec, fp::abelianization(P), "");
        return rep;
    }
    if (subcommand == "h1") {
        auto& sec = rep.add("seifert.h1", "first homology order of " + s.str());
        const std::optional<exact::Int> h = seifert::h1_order(s);
        sec.human(h ? cat("|H1| = ", *h) : "H1 is infinite (betti > 0)");
        sec.kv("h1", h ? h->get_str() : "infinite");
        return rep;
    }
    if (subcommand == "euler") {
        auto& sec = rep.add("seifert.euler", "euler number of " + s.str());
        const exact::Rat e = seifert::euler_number(s);
        sec.human(cat("e = ", e));
        sec.kv("euler", e.get_str());
        return rep;
    }
    if (subcommand == "kill-fiber") {
        auto& sec = rep.add("seifert.kill_fiber", "base orbifold group of " + s.str());
        const fp::Presentation Q = seifert::kill_regular_fiber(s);
        sec.human(Q.str());
        sec.kv("presentation", Q.str());
        if (s.fibers().size() == 3) {
            const long p = s.fibers()[0].alpha, q = s.fibers()[1].alpha,
                       r = s.fibers()[2].alpha;
            const bool match = seifert::matches_triangle(Q, p, q, r);
            sec.human(cat("triangle (", p, ",", q, ",", r, ") match: ",
                          match ? "true" : "false"));
            sec.kv("triangle", cat("(", p, ",", q, ",", r, ")"));
            sec.kv("triangle_match", match ? "true" : "false");
            if (!match) sec.status = report::Status::Fail;
        }
        return rep;
    }
    throw std::invalid_argument("unknown seifert subcommand '" + subcommand +
                                "' (pi1, h1, euler, kill-fiber)");
}

report::Report cmd_pretzel(const std::string& subcommand, const std::string& input,
                           const GlobalFlags&) {
    report::Report rep;
    const pretzel::PretzelKnot k = pretzel::PretzelKnot::parse(input);

    if (subcommand == "det") {
        auto& sec = rep.add("pretzel.det", "determinant of " + k.str());
        const exact::Int d = pretzel::determinant(k);
        sec.human(cat("determinant ", d, " (Goeritz and multilinear routes agree)"));
        sec.kv("determinant", d.get_str());
        sec.kv("is_knot", k.is_knot() ? "true" : "false");
        return rep;
    }
    if (subcommand == "goeritz") {
        auto& sec = rep.add("pretzel.goeritz", "Goeritz form of " + k.str());
        const exact::SymmetricForm G = pretzel::goeritz_matrix(k);
        for (std::size_t i = 0; i < G.dimension(); ++i) {
            std::string row = "[";
            for (std::size_t j = 0; j < G.dimension(); ++j)
                row += (j ? ", " : "") + G(i, j).get_str();
            sec.human(row + "]");
            sec.kv(cat("row", i), row + "]");
        }
        const exact::Signature sig = exact::signature_of(G);
        sec.human(cat("signature (b+, b0, b-) = (", sig.b_plus, ", ", sig.b_zero, ", ",
                      sig.b_minus, ")"));
        sec.kv("dimension", static_cast<long long>(G.dimension()));
        sec.kv("b_plus", static_cast<long long>(sig.b_plus));
        sec.kv("b_zero", static_cast<long long>(sig.b_zero));
        sec.kv("b_minus", static_cast<long long>(sig.b_minus));
        return rep;
    }
    if (subcommand == "dbc") {
        auto& sec = rep.add("pretzel.dbc", "double branched cover of " + k.str());
        const seifert::SeifertInvariants s = pretzel::double_branched_cover(k);
        sec.human(s.str());
        sec.kv("dbc", s.str());
        const std::optional<exact::Int> h1 = seifert::h1_order(s);
        const exact::Int det = pretzel::determinant(k);
        const bool match = h1 && *h1 == det;
        sec.human(cat("cross-check |H1(dbc)| = ", h1 ? h1->get_str() : "infinite",
                      " vs determinant ", det, ": ", match ? "pass" : "FAIL"));
        sec.kv("h1", h1 ? h1->get_str() : "infinite");
        sec.kv("determinant", det.get_str());
        sec.kv("crosscheck", match ? "pass" : "fail");
        if (!match) sec.status = report::Status::Fail;
        return rep;
    }
    throw std::invalid_argument("unknown pretzel subcommand '" + subcommand +
                                "' (det, goeritz, dbc)");
}

report::Report cmd_surface_check(const std::string& path, const GlobalFlags& flags) {
    std::ifstream in(path);
    if (!in) throw fp::ParseError("cannot open file '" + path + "'", 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    const obstruct::SurfaceDocument doc = obstruct::parse_surface_document(buf.str());
    const obstruct::SurfaceFileEntry& subject = doc.subject();

    report::Report rep;

    auto& in_sec = rep.add("surface.input", "surface '" + subject.name + "'");
    const long chi = obstruct::euler_characteristic(subject.spec);
    in_sec.human(cat("euler characteristic ", chi));
    in_sec.kv("chi", static_cast<long long>(chi));
    in_sec.kv("surfaces_in_file", static_cast<long long>(doc.surfaces.size()));
    if (subject.spec.is<obstruct::DoubleOfRibbon>()) {
        const auto& d = subject.spec.as<obstruct::DoubleOfRibbon>();
        in_sec.human(cat("double of a ribbon surface, ", d.type.str(), ", k = ", d.k,
                         ", certified rk H2(pi1) = ", d.h2_cert.rank));
        in_sec.kv("type", d.type.str());
        in_sec.kv("k", static_cast<long long>(d.k));
        in_sec.kv("cert_rank", static_cast<long long>(d.h2_cert.rank));
    }

    {
        auto& sec = rep.add("surface.theorem",
                            "stable irreducibility (case sweep to " +
                                std::to_string(flags.sweep) + ")");
        sec.kv("sweep", static_cast<long long>(flags.sweep));
        render_verdict(sec, obstruct::check_theorem(subject.spec, flags.sweep),
                       obstruct::Conclusion::StablyIrreducible, flags);
    }
    {
        auto& sec = rep.add("surface.proposition", "not a 2-knot # unknotted splitting");
        if (chi >= 2) {
            sec.status = report::Status::Inconclusive;
            sec.human("not applicable: chi >= 2");
            sec.kv("conclusion", "not_applicable");
        } else {
            render_verdict(sec, obstruct::check_proposition(subject.spec),
                           obstruct::Conclusion::NotSphereSumUnknotted, flags);
        }
    }
    if (subject.spec.is<obstruct::DoubleOfRibbon>() &&
        subject.spec.as<obstruct::DoubleOfRibbon>().type ==
            obstruct::SurfaceType::klein_bottle()) {
        auto& sec = rep.add("surface.remark", "no splitting into two projective planes");
        render_verdict(sec,
                       obstruct::check_remark_rp2_split(subject.spec, subject.indecomposable),
                       obstruct::Conclusion::NoRp2Splitting, flags);
    }
    return rep;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    GlobalFlags flags;
    CLI::App app{"exact invariants and certified verdicts for knotted-surface double covers"};
    app.name("ksurf");
    app.require_subcommand(1);

    app.add_flag("--machine", flags.machine, "print only the structured key-value block");
    app.add_flag("--trace", flags.trace, "include full proof traces in verdict sections");
    app.add_option("--sweep", flags.sweep, "case-sweep bound for surface checks")
        ->capture_default_str();
    app.add_option("--max-cosets,--max", flags.max_cosets, "coset enumeration limit")
        ->capture_default_str();

    std::string g_sub, g_input, g_subgroup;
    auto* group = app.add_subcommand("group", "finitely presented group operations");
    group->fallthrough();
    group->add_option("subcommand", g_sub,
                      "abelianize | deficiency | b2bound | todd-coxeter | schreier | "
                      "quotient-order")
        ->required();
    group->add_option("input", g_input,
                      "presentation \"<gens | rels>\"; for quotient-order, permutation images "
                      "\"[..];[..]\"")
        ->required();
    group->add_option("--subgroup", g_subgroup,
                      "comma-separated subgroup generator words (default: trivial)");

    std::string s_sub, s_input;
    auto* sei = app.add_subcommand("seifert", "Seifert fibered space operations");
    sei->fallthrough();
    sei->add_option("subcommand", s_sub, "pi1 | h1 | euler | kill-fiber")->required();
    sei->add_option("input", s_input, "Seifert invariants \"S2(b; p/q, ...)\"")->required();

    std::string p_sub, p_input;
    auto* pre = app.add_subcommand("pretzel", "pretzel knot operations");
    pre->fallthrough();
    pre->add_option("subcommand", p_sub, "det | goeritz | dbc")->required();
    pre->add_option("input", p_input, "pretzel twists \"P(e1,...,en)\"")->required();

    std::string verb, file;
    auto* surf = app.add_subcommand("surface", "knotted-surface decision procedures");
    surf->fallthrough();
    surf->add_option("verb", verb, "check")->required();
    surf->add_option("file", file, "surface spec file")->required();

    auto* ver = app.add_subcommand("verify", "run the full reproduction suite");
    ver->fallthrough();
    ver->add_option("--corrupt", flags.corrupt,
                    "test mode: corrupt a pinned fixture (psl27 | goeritz | cert)")
        ->check(CLI::IsMember({"psl27", "goeritz", "cert"}));

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        report::Report rep;
        if (app.got_subcommand(group)) {
            rep = cmd_group(g_sub, g_input, g_subgroup, flags);
        } else if (app.got_subcommand(sei)) {
            rep = cmd_seifert(s_sub, s_input, flags);
        } else if (app.got_subcommand(pre)) {
            rep = cmd_pretzel(p_sub, p_input, flags);
        } else if (app.got_subcommand(surf)) {
            if (verb != "check") throw std::invalid_argument("unknown surface verb '" + verb + "'");
            rep = cmd_surface_check(file, flags);
        } else {
            rep = cmd_paper_verify(flags);
        }
        out << rep.render(flags.machine);
        return rep.exit_code();
    } catch (const fp::ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace ksurf::cli
