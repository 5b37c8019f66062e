#include "ksurf/obstruct.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ksurf/parallel.hpp"

namespace ksurf::obstruct {

namespace {

template <class... Ts>
std::string cat(Ts&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    return os.str();
}

}  // namespace

SurfaceType SurfaceType::orientable_genus(long g) {
    if (g < 0) throw std::invalid_argument("SurfaceType: negative genus");
    SurfaceType t;
    t.orientable = true;
    t.genus = g;
    return t;
}

SurfaceType SurfaceType::nonorientable_crosscaps(long c) {
    if (c < 1) throw std::invalid_argument("SurfaceType: crosscap count must be >= 1");
    SurfaceType t;
    t.orientable = false;
    t.crosscaps = c;
    return t;
}

long SurfaceType::euler_characteristic() const {
    return orientable ? 2 - 2 * genus : 2 - crosscaps;
}

std::string SurfaceType::str() const {
    if (orientable) {
        if (genus == 0) return "sphere";
        if (genus == 1) return "torus";
        return cat("orientable g=", genus);
    }
    if (crosscaps == 1) return "RP2";
    if (crosscaps == 2) return "klein";
    return cat("nonorientable c=", crosscaps);
}

bool operator==(const ConnectedSum& a, const ConnectedSum& b) { return a.parts == b.parts; }

bool SurfaceSpec::operator==(const SurfaceSpec& other) const { return v == other.v; }

SurfaceSpec make_double_of_ribbon(SurfaceType type, std::size_t k,
                                  fp::Presentation cover_pi1, H2Certificate cert) {
    if (type.euler_characteristic() != 2 - 2 * static_cast<long>(k))
        throw std::invalid_argument("DoubleOfRibbon: chi(type) != 2 - 2k");
    if (cert.rank > fp::b2_upper_bound(cover_pi1))
        throw std::invalid_argument(kReasonCertExceedsBound);
    return SurfaceSpec{DoubleOfRibbon{type, k, std::move(cover_pi1), std::move(cert), 0}};
}

SurfaceSpec make_two_knot(std::string name) { return SurfaceSpec{TwoKnot{std::move(name)}}; }

SurfaceSpec make_unknotted(SurfaceType type, long normal_euler) {
    if (type.orientable) {
        if (normal_euler != 0)
            throw std::invalid_argument("Unknotted: orientable surfaces have normal Euler number 0");
    } else if (type == SurfaceType::rp2()) {
        if (normal_euler != 2 && normal_euler != -2)
            throw std::invalid_argument("Unknotted: RP2 needs normal Euler number +2 or -2");
    } else {
        throw std::invalid_argument("Unknotted: unsupported non-orientable type");
    }
    return SurfaceSpec{Unknotted{type, normal_euler}};
}

SurfaceSpec make_connected_sum(std::vector<SurfaceSpec> parts) {
    std::vector<SurfaceSpec> flat;
    for (SurfaceSpec& p : parts) {
        if (p.is<ConnectedSum>()) {
            auto& inner = std::get<ConnectedSum>(p.v).parts;
            for (SurfaceSpec& q : inner) flat.push_back(std::move(q));
        } else {
            flat.push_back(std::move(p));
        }
    }
    if (flat.empty()) throw std::invalid_argument("ConnectedSum: no parts");
    if (flat.size() == 1) return std::move(flat.front());
    return SurfaceSpec{ConnectedSum{std::move(flat)}};
}

long euler_characteristic(const SurfaceSpec& s) {
    if (s.is<DoubleOfRibbon>()) return s.as<DoubleOfRibbon>().type.euler_characteristic();
    if (s.is<TwoKnot>()) return 2;
    if (s.is<Unknotted>()) return s.as<Unknotted>().type.euler_characteristic();
    const auto& parts = s.as<ConnectedSum>().parts;
    long chi = 2;
    for (const SurfaceSpec& p : parts) chi += euler_characteristic(p) - 2;
    return chi;
}

namespace {

SpinParity combine_parity(SpinParity a, SpinParity b) {
    if (a == SpinParity::Odd || b == SpinParity::Odd) return SpinParity::Odd;
    if (a == SpinParity::Unknown || b == SpinParity::Unknown) return SpinParity::Unknown;
    return SpinParity::Even;
}

}  // namespace

CoverInvariants cover_invariants(const SurfaceSpec& s) {
    CoverInvariants ci;
    ci.pi1 = fp::Presentation({}, {});
    if (s.is<DoubleOfRibbon>()) {
        const auto& d = s.as<DoubleOfRibbon>();
        ci.b2 = 2 * d.k;
        ci.b_plus = d.k;
        ci.b_minus = d.k;
        ci.pi1 = d.cover_pi1;
        ci.pi1_h2_rank = d.h2_cert.rank;
        ci.spin_parity = SpinParity::Unknown;
    } else if (s.is<TwoKnot>()) {
        // Rational homology 4-sphere: b2 = 0 is all that is ever consumed;
        // pi1 stays symbolic (trivial placeholder presentation).
        ci.spin_parity = SpinParity::Even;
    } else if (s.is<Unknotted>()) {
        const auto& u = s.as<Unknotted>();
        if (!u.type.orientable) {
            ci.b2 = 1;
            (u.normal_euler == -2 ? ci.b_plus : ci.b_minus) = 1;
            ci.spin_parity = SpinParity::Odd;
        } else {
            const auto g = static_cast<std::size_t>(u.type.genus);
            ci.b2 = 2 * g;
            ci.b_plus = g;
            ci.b_minus = g;
            ci.spin_parity = SpinParity::Even;
        }
    } else {
        ci.spin_parity = SpinParity::Even;
        for (const SurfaceSpec& p : s.as<ConnectedSum>().parts) {
            const CoverInvariants part = cover_invariants(p);
            ci.b2 += part.b2;
            ci.b_plus += part.b_plus;
            ci.b_minus += part.b_minus;
            ci.pi1 = fp::free_product(ci.pi1, part.pi1);
            ci.pi1_h2_rank += part.pi1_h2_rank;
            ci.spin_parity = combine_parity(ci.spin_parity, part.spin_parity);
        }
    }
    return ci;
}

std::size_t pi2_image_rank(const CoverInvariants& c) {
    if (c.pi1_h2_rank > c.b2)
        throw std::invalid_argument("pi2_image_rank: certificate exceeds b2");
    return c.b2 - c.pi1_h2_rank;
}

RestrictedFormSummary restricted_form(const SurfaceSpec& core,
                                      const std::vector<SurfaceSpec>& stabilizers) {
    if (!core.is<DoubleOfRibbon>())
        throw std::invalid_argument("restricted_form: core without a spherical-class rule");
    RestrictedFormSummary r;
    r.zero_summand_rank = core.as<DoubleOfRibbon>().k;
    for (const SurfaceSpec& s : stabilizers) {
        if (!s.is<Unknotted>())
            throw std::invalid_argument("restricted_form: stabilizers must be unknotted");
        const auto& u = s.as<Unknotted>();
        if (!u.type.orientable) {
            (u.normal_euler == -2 ? r.pos : r.neg) += 1;
        } else {
            r.pos += static_cast<std::size_t>(u.type.genus);
            r.neg += static_cast<std::size_t>(u.type.genus);
        }
    }
    r.total_rank = r.zero_summand_rank + r.pos + r.neg;
    return r;
}

RestrictedFormSummary restricted_form_lower_bound(std::size_t l_plus, std::size_t l_minus) {
    RestrictedFormSummary r;
    r.pos = l_plus;
    r.neg = l_minus;
    r.total_rank = l_plus + l_minus;
    r.lower_bound = true;
    return r;
}

// ---------------------------------------------------------------------------
// Traces

bool TraceCheck::holds() const {
    switch (rel) {
        case Rel::Eq: return lhs == rhs;
        case Rel::Ne: return lhs != rhs;
        case Rel::Lt: return lhs < rhs;
        case Rel::Le: return lhs <= rhs;
        case Rel::Gt: return lhs > rhs;
        case Rel::Ge: return lhs >= rhs;
    }
    return false;
}

std::string TraceCheck::str() const {
    const char* op = "?";
    switch (rel) {
        case Rel::Eq: op = "="; break;
        case Rel::Ne: op = "!="; break;
        case Rel::Lt: op = "<"; break;
        case Rel::Le: op = "<="; break;
        case Rel::Gt: op = ">"; break;
        case Rel::Ge: op = ">="; break;
    }
    return cat(lhs, ' ', op, ' ', rhs);
}

bool ProofTrace::replay() const {
    for (const TraceLine& l : lines)
        for (const TraceCheck& c : l.checks)
            if (!c.holds()) return false;
    return true;
}

std::string ProofTrace::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        os << '(' << i + 1 << ") " << lines[i].statement << '\n';
        os << "    rule: " << lines[i].rule << '\n';
        for (const TraceCheck& c : lines[i].checks)
            os << "    check: " << c.str() << (c.holds() ? "" : "   [FAILS]") << '\n';
    }
    return os.str();
}

std::string to_string(Conclusion c) {
    switch (c) {
        case Conclusion::StablyIrreducible: return "stably_irreducible";
        case Conclusion::NotSphereSumUnknotted: return "not_sphere_sum_unknotted";
        case Conclusion::NoRp2Splitting: return "no_rp2_splitting";
        case Conclusion::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

// ---------------------------------------------------------------------------
// Decision procedures

namespace {

Verdict theorem_impl(const SurfaceSpec& s, std::size_t sweep_bound, bool parallel) {
    Verdict v;
    if (!s.is<DoubleOfRibbon>()) {
        v.reason = kReasonNotRibbonDouble;
        v.trace.lines.push_back(
            {"input surface is not presented as a double of a ribbon surface",
             "hypothesis gate (construction)",
             {}});
        return v;
    }
    const auto& d = s.as<DoubleOfRibbon>();
    const long long chi = d.type.euler_characteristic();
    const long long k = static_cast<long long>(d.k);
    const long long r = static_cast<long long>(d.h2_cert.rank);

    if (chi >= 2) {
        v.reason = kReasonChiNotLess2;
        v.trace.lines.push_back({cat("hypothesis fails: chi(S) = ", chi, " is not < 2"),
                                 "hypothesis gate (euler characteristic)",
                                 {{chi, Rel::Ge, 2}}});
        return v;
    }
    if (r != k) {
        v.reason = kReasonCertRankMismatch;
        v.trace.lines.push_back(
            {cat("hypothesis fails: certified rk H2(pi1) = ", r, " but k = ", k),
             "hypothesis gate (certificate)",
             {{r, Rel::Ne, k}}});
        return v;
    }
    const long long bound = static_cast<long long>(fp::b2_upper_bound(d.cover_pi1));
    if (r > bound) {
        v.reason = kReasonCertExceedsBound;
        v.trace.lines.push_back(
            {cat("hypothesis fails: certificate rank ", r, " exceeds the b2 upper bound ",
                 bound, " of the cover pi1 presentation"),
             "presentation 2-complex bound",
             {{r, Rel::Gt, bound}}});
        return v;
    }

    const CoverInvariants ci = cover_invariants(s);
    const long long pi2 = static_cast<long long>(pi2_image_rank(ci));

    auto& L = v.trace.lines;
    L.push_back({cat("hypothesis: chi(S) = 2 - 2k = ", chi, " < 2 with k = ", k),
                 "hypothesis gate (euler characteristic)",
                 {{chi, Rel::Eq, 2 - 2 * k}, {chi, Rel::Lt, 2}}});
    L.push_back({cat("hypothesis: certified rk H2(pi1(Sigma_2(S))) = ", r, " equals k = ", k,
                     " [", d.h2_cert.source, "]"),
                 "hypothesis gate (certificate)",
                 {{r, Rel::Eq, k}}});
    L.push_back({cat("certificate consistency: rank ", r, " <= ", bound,
                     ", the b2 upper bound of the cover pi1 presentation"),
                 "presentation 2-complex bound",
                 {{r, Rel::Le, bound}}});
    L.push_back({cat("cover invariants: b2(Sigma_2(S)) = 2k = ", ci.b2, ", b+ = b- = ", ci.b_plus,
                     ", signature 0"),
                 "ribbon-double cover invariants",
                 {{static_cast<long long>(ci.b2), Rel::Eq, 2 * k},
                  {static_cast<long long>(ci.b_plus), Rel::Eq, k},
                  {static_cast<long long>(ci.b_minus), Rel::Eq, k},
                  {ci.signature(), Rel::Eq, 0}}});
    L.push_back({cat("Hopf sequence: rank im(pi_2 -> H_2) = b2 - rk H2(pi1) = ", ci.b2, " - ", r,
                     " = ", pi2),
                 "Hopf exact sequence",
                 {{pi2, Rel::Eq, static_cast<long long>(ci.b2) - r}}});
    L.push_back({cat("restricted form: the k = ", k,
                     " spherical classes from the ribbon-double core are pairwise disjoint and "
                     "square-zero, a rank-k zero summand"),
                 "square-zero sphere summand",
                 {{static_cast<long long>(restricted_form(s, {}).zero_summand_rank), Rel::Eq, k}}});
    L.push_back({"universal case: if S # U were equivalent to S' # U' with chi(S') > chi(S) and "
                 "U, U' unknotted (normalized to sums of unknotted RP2s with l and l' summands), "
                 "one intersection form would have nondegenerate restricted rank both = l and "
                 ">= l' > l; the cases below replay this for all l < l' up to the sweep bound",
                 "universal claim (documentation)",
                 {}});

    const std::size_t pairs = sweep_bound * (sweep_bound + 1) / 2;
    std::vector<TraceLine> cases(pairs);
    parallel_for(
        0, static_cast<std::ptrdiff_t>(pairs),
        [&](std::ptrdiff_t idx) {
            std::size_t lp = 1;
            while (lp * (lp + 1) / 2 <= static_cast<std::size_t>(idx)) ++lp;
            const std::size_t l = static_cast<std::size_t>(idx) - (lp - 1) * lp / 2;

            std::vector<SurfaceSpec> stabs;
            for (std::size_t i = 0; i < l; ++i)
                stabs.push_back(make_unknotted(SurfaceType::rp2(), i % 2 == 0 ? -2 : 2));
            const RestrictedFormSummary rf = restricted_form(s, stabs);
            const RestrictedFormSummary lb = restricted_form_lower_bound((lp + 1) / 2, lp / 2);

            TraceLine line;
            line.statement =
                cat("case l=", l, ", l'=", lp, ": Sigma_2(S # U) has restricted form with zero "
                    "summand rank ", rf.zero_summand_rank, " and nondegenerate rank ", l,
                    " (", rf.pos, "[+1], ", rf.neg, "[-1]); the S' # U' description of the same "
                    "form has nondegenerate rank >= ", lp, "; ", lp, " > ", l,
                    " is the contradiction");
            line.rule = "stabilizer rank count";
            line.checks = {
                {static_cast<long long>(rf.total_rank), Rel::Eq, k + static_cast<long long>(l)},
                {static_cast<long long>(rf.nondegenerate_rank()), Rel::Eq, static_cast<long long>(l)},
                {static_cast<long long>(lb.nondegenerate_rank()), Rel::Eq, static_cast<long long>(lp)},
                {static_cast<long long>(lp), Rel::Gt, static_cast<long long>(l)}};
            cases[static_cast<std::size_t>(idx)] = std::move(line);
        },
        parallel);
    for (TraceLine& line : cases) L.push_back(std::move(line));

    v.conclusion = Conclusion::StablyIrreducible;
    v.note = "stably irreducible implies irreducible";
    return v;
}

}  // namespace

Verdict check_theorem(const SurfaceSpec& s, std::size_t sweep_bound) {
    return theorem_impl(s, sweep_bound, true);
}

Verdict check_theorem_serial(const SurfaceSpec& s, std::size_t sweep_bound) {
    return theorem_impl(s, sweep_bound, false);
}

Verdict check_proposition(const SurfaceSpec& s) {
    if (euler_characteristic(s) >= 2)
        throw std::invalid_argument("check_proposition: sphere input");
    const CoverInvariants ci = cover_invariants(s);
    const long long r = static_cast<long long>(ci.pi1_h2_rank);

    Verdict v;
    if (r == 0) {
        v.reason = kReasonB2Pi1Zero;
        v.trace.lines.push_back(
            {"certified rk H2(pi1(Sigma_2(S))) = 0 gives no splitting obstruction",
             "hypothesis gate (certificate)",
             {{r, Rel::Eq, 0}}});
        return v;
    }
    v.conclusion = Conclusion::NotSphereSumUnknotted;
    auto& L = v.trace.lines;
    L.push_back({"suppose S = N # U with N a 2-knot and U unknotted; Sigma_2(N) is a rational "
                 "homology 4-sphere, so b2(Sigma_2(N)) = 0",
                 "2-knot cover is a rational homology sphere",
                 {{0, Rel::Eq, 0}}});
    L.push_back({"Hopf bound: 0 = b2(Sigma_2(N)) >= b2(pi1(Sigma_2(N))), and pi1(Sigma_2(N)) = "
                 "pi1(Sigma_2(S)) because unknotted summands have simply connected covers",
                 "Hopf exact sequence + unknotted summand pi1",
                 {}});
    L.push_back({cat("certificate: b2(pi1(Sigma_2(S))) = ", r, " > 0, so the chain 0 = "
                     "b2(Sigma_2(N)) >= b2(pi1(Sigma_2(S))) = ", r, " > 0 is impossible"),
                 "H2 certificate",
                 {{r, Rel::Gt, 0}, {0, Rel::Lt, r}}});
    return v;
}

Verdict check_remark_rp2_split(const SurfaceSpec& s,
                               const std::optional<IndecomposabilityCert>& cert) {
    if (!s.is<DoubleOfRibbon>() ||
        !(s.as<DoubleOfRibbon>().type == SurfaceType::klein_bottle()))
        throw std::invalid_argument("check_remark_rp2_split: not a Klein bottle ribbon double");
    const CoverInvariants ci = cover_invariants(s);

    Verdict v;
    if (!cert) {
        v.reason = kReasonNoIndecompCert;
        v.trace.lines.push_back(
            {"no free-product indecomposability certificate for the cover pi1 was supplied",
             "certificate gate",
             {}});
        return v;
    }
    if (ci.pi1_h2_rank == 0) {
        v.reason = kReasonB2Pi1Zero;
        v.trace.lines.push_back(
            {"certified rk H2(pi1(Sigma_2(S))) = 0 gives no splitting obstruction",
             "hypothesis gate (certificate)",
             {{0, Rel::Eq, 0}}});
        return v;
    }
    const long long pi2 = static_cast<long long>(pi2_image_rank(ci));

    v.conclusion = Conclusion::NoRp2Splitting;
    auto& L = v.trace.lines;
    L.push_back({cat("cover invariants: b2(Sigma_2(S)) = ", ci.b2, ", b+ = ", ci.b_plus,
                     ", b- = ", ci.b_minus,
                     "; signature 0 forces the intersection form to split as (+1) (+) (-1)"),
                 "signature-zero rank-2 form",
                 {{static_cast<long long>(ci.b2), Rel::Eq, 2},
                  {static_cast<long long>(ci.b_plus), Rel::Eq, 1},
                  {static_cast<long long>(ci.b_minus), Rel::Eq, 1},
                  {ci.signature(), Rel::Eq, 0}}});
    L.push_back({cat("suppose S = P1 # P2 with each Pi an embedded RP2; then pi1(Sigma_2(S)) = "
                     "pi1(Sigma_2(P1)) * pi1(Sigma_2(P2)); by the certificate [", cert->source,
                     "] the cover group does not split as a nontrivial free product, so some "
                     "Sigma_2(Pi) is simply connected, with Q_P1 = (+1) and Q_P2 = (-1) after "
                     "relabeling"),
                 "free-product trichotomy (certificate)",
                 {}});
    L.push_back({"the simply connected summand satisfies H_2 = im(pi_2) by the Hopf sequence: "
                 "its rank-1 generator (square +1 or -1) is represented by a sphere",
                 "Hopf sequence on a simply connected summand",
                 {{1 - 0, Rel::Eq, 1}}});
    L.push_back({"Sigma_2(S) is a double, hence carries an orientation-reversing homeomorphism "
                 "exchanging the (+1) and (-1) classes; both signs therefore lie in im(pi_2)",
                 "orientation-reversing symmetry of a double",
                 {}});
    L.push_back({cat("then rank im(pi_2 -> H_2) = 2, but the Hopf sequence gives b2 - rk "
                     "H2(pi1) = ", ci.b2, " - ", ci.pi1_h2_rank, " = ", pi2, "; 2 > ", pi2,
                     " is the contradiction"),
                 "Hopf exact sequence",
                 {{pi2, Rel::Eq, static_cast<long long>(ci.b2) -
                                     static_cast<long long>(ci.pi1_h2_rank)},
                  {2, Rel::Gt, pi2}}});
    return v;
}

SurfaceSpec corollary_surface(std::size_t ell, bool orientable) {
    if (ell == 0) throw std::invalid_argument("corollary_surface: ell must be >= 1");
    fp::Presentation pi1 = fp::triangle_presentation(2, 3, 7);
    for (std::size_t i = 1; i < ell; ++i)
        pi1 = fp::free_product(pi1, fp::triangle_presentation(2, 3, 7));
    H2Certificate cert;
    cert.rank = ell;
    cert.provenance =
        ell == 1 ? CertProvenance::Literature : CertProvenance::FreeProductAdditivity;
    cert.source = ell == 1 ? "H2(T(2,3,7)) = Z (Hurwitz group homology)"
                           : "free-product additivity over H2(T(2,3,7)) = Z";
    const SurfaceType type = orientable
                                 ? SurfaceType::orientable_genus(static_cast<long>(ell))
                                 : SurfaceType::nonorientable_crosscaps(2 * static_cast<long>(ell));
    return make_double_of_ribbon(type, ell, std::move(pi1), std::move(cert));
}

// ---------------------------------------------------------------------------
// Surface spec files

namespace {

struct PendingSurface {
    std::string name;
    std::size_t line_pos = 0;  // offset of the `surface` line, for error reporting
    std::optional<SurfaceType> type;
    std::optional<std::size_t> k;
    bool double_of_ribbon = false;
    std::optional<fp::Presentation> cover;
    std::optional<H2Certificate> cert;
    std::vector<SurfaceSpec> summands;
    std::vector<std::string> sum_names;
    std::optional<IndecomposabilityCert> indecomposable;
};

std::string trim(std::string_view sv) {
    std::size_t a = 0, b = sv.size();
    while (a < b && std::isspace(static_cast<unsigned char>(sv[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(sv[b - 1]))) --b;
    return std::string(sv.substr(a, b - a));
}

std::vector<std::string> split_ws(std::string_view sv) {
    std::vector<std::string> out;
    std::istringstream is{std::string(sv)};
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

long parse_assigned_long(const std::string& token, const std::string& key, std::size_t pos) {
    if (token.size() <= key.size() + 1 || token.compare(0, key.size(), key) != 0 ||
        token[key.size()] != '=')
        throw fp::ParseError("expected " + key + "=<integer>", pos);
    try {
        return std::stol(token.substr(key.size() + 1));
    } catch (const std::exception&) {
        throw fp::ParseError("expected " + key + "=<integer>", pos);
    }
}

std::string parse_quoted_source(std::string_view rest, std::size_t pos) {
    const std::string body = trim(rest);
    constexpr std::string_view kPrefix = "source=\"";
    if (body.size() < kPrefix.size() + 1 || body.compare(0, kPrefix.size(), kPrefix) != 0 ||
        body.back() != '"')
        throw fp::ParseError("expected source=\"<citation>\"", pos);
    return body.substr(kPrefix.size(), body.size() - kPrefix.size() - 1);
}

// cover_pi1 value: a presentation, triangle(p,q,r), or free_product(f1, f2, ...).
fp::Presentation parse_cover_form(std::string_view text, std::size_t pos) {
    const std::string body = trim(text);
    if (body.empty()) throw fp::ParseError("empty cover_pi1 value", pos);
    if (body[0] == '<') return fp::parse_presentation(body);
    if (body.rfind("triangle", 0) == 0) {
        std::size_t open = body.find('(');
        if (open == std::string::npos || body.back() != ')')
            throw fp::ParseError("expected triangle(p,q,r)", pos);
        std::istringstream is{body.substr(open + 1, body.size() - open - 2)};
        long p = 0, q = 0, r = 0;
        char c1 = 0, c2 = 0;
        if (!(is >> p >> c1 >> q >> c2 >> r) || c1 != ',' || c2 != ',')
            throw fp::ParseError("expected triangle(p,q,r)", pos);
        try {
            return fp::triangle_presentation(p, q, r);
        } catch (const std::invalid_argument& e) {
            throw fp::ParseError(e.what(), pos);
        }
    }
    if (body.rfind("free_product", 0) == 0) {
        std::size_t open = body.find('(');
        if (open == std::string::npos || body.back() != ')')
            throw fp::ParseError("expected free_product(...)", pos);
        const std::string inner = body.substr(open + 1, body.size() - open - 2);
        std::vector<std::string> args;
        int depth = 0;
        std::string current;
        for (char c : inner) {
            if (c == ',' && depth == 0) {
                args.push_back(current);
                current.clear();
                continue;
            }
            if (c == '(' || c == '<') ++depth;
            if (c == ')' || c == '>') --depth;
            current += c;
        }
        if (!trim(current).empty() || !args.empty()) args.push_back(current);
        if (args.empty()) throw fp::ParseError("free_product needs at least one factor", pos);
        fp::Presentation acc = parse_cover_form(args[0], pos);
        for (std::size_t i = 1; i < args.size(); ++i)
            acc = fp::free_product(acc, parse_cover_form(args[i], pos));
        return acc;
    }
    throw fp::ParseError("expected a presentation, triangle(p,q,r), or free_product(...)", pos);
}

SurfaceFileEntry finalize_surface(PendingSurface&& p,
                                  const std::map<std::string, SurfaceSpec>& by_name) {
    try {
        SurfaceSpec spec = [&] {
            if (!p.sum_names.empty()) {
                std::vector<SurfaceSpec> parts;
                for (const std::string& n : p.sum_names) {
                    auto it = by_name.find(n);
                    if (it == by_name.end())
                        throw fp::ParseError("unknown surface name '" + n + "'", p.line_pos);
                    parts.push_back(it->second);
                }
                for (SurfaceSpec& s : p.summands) parts.push_back(std::move(s));
                return make_connected_sum(std::move(parts));
            }
            if (!p.double_of_ribbon)
                throw fp::ParseError("surface '" + p.name + "' has no construction", p.line_pos);
            if (!p.type || !p.k || !p.cover || !p.cert)
                throw fp::ParseError("surface '" + p.name +
                                         "' needs type, construction, cover_pi1 and h2_cert",
                                     p.line_pos);
            SurfaceSpec core =
                make_double_of_ribbon(*p.type, *p.k, std::move(*p.cover), std::move(*p.cert));
            if (p.summands.empty()) return core;
            std::vector<SurfaceSpec> parts{std::move(core)};
            for (SurfaceSpec& s : p.summands) parts.push_back(std::move(s));
            return make_connected_sum(std::move(parts));
        }();
        return SurfaceFileEntry{p.name, std::move(spec), std::move(p.indecomposable)};
    } catch (const std::invalid_argument& e) {
        throw fp::ParseError(e.what(), p.line_pos);
    }
}

}  // namespace

const SurfaceFileEntry& SurfaceDocument::subject() const {
    if (surfaces.empty()) throw std::logic_error("SurfaceDocument: empty");
    return surfaces.back();
}

SurfaceDocument parse_surface_document(std::string_view text) {
    SurfaceDocument doc;
    std::map<std::string, SurfaceSpec> by_name;
    std::optional<PendingSurface> pending;

    auto flush = [&] {
        if (!pending) return;
        SurfaceFileEntry entry = finalize_surface(std::move(*pending), by_name);
        if (by_name.count(entry.name))
            throw fp::ParseError("duplicate surface name '" + entry.name + "'", pending->line_pos);
        by_name.emplace(entry.name, entry.spec);
        doc.surfaces.push_back(std::move(entry));
        pending.reset();
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = std::min(text.find('\n', pos), text.size());
        const std::string_view raw = text.substr(pos, eol - pos);
        const std::size_t line_pos = pos;
        pos = eol + 1;

        const std::string line = trim(raw.substr(0, std::min(raw.find('#'), raw.size())));
        if (line.empty()) {
            if (eol == text.size()) break;
            continue;
        }
        const std::size_t sp = line.find(' ');
        const std::string keyword = line.substr(0, sp);
        const std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp + 1));

        if (keyword == "surface") {
            flush();
            if (rest.empty() || split_ws(rest).size() != 1)
                throw fp::ParseError("expected surface <name>", line_pos);
            pending = PendingSurface{};
            pending->name = rest;
            pending->line_pos = line_pos;
            continue;
        }
        if (!pending) throw fp::ParseError("directive before any 'surface' line", line_pos);

        if (keyword == "type") {
            const auto toks = split_ws(rest);
            if (toks.size() == 1 && toks[0] == "torus") pending->type = SurfaceType::torus();
            else if (toks.size() == 1 && toks[0] == "klein") pending->type = SurfaceType::klein_bottle();
            else if (toks.size() == 2 && toks[0] == "orientable")
                pending->type = SurfaceType::orientable_genus(
                    parse_assigned_long(toks[1], "g", line_pos));
            else if (toks.size() == 2 && toks[0] == "nonorientable")
                pending->type = SurfaceType::nonorientable_crosscaps(
                    parse_assigned_long(toks[1], "c", line_pos));
            else
                throw fp::ParseError(
                    "expected type torus|klein|orientable g=<n>|nonorientable c=<n>", line_pos);
        } else if (keyword == "construction") {
            const auto toks = split_ws(rest);
            if (toks.size() != 2 || toks[0] != "double_of_ribbon")
                throw fp::ParseError("expected construction double_of_ribbon k=<n>", line_pos);
            const long k = parse_assigned_long(toks[1], "k", line_pos);
            if (k < 0) throw fp::ParseError("k must be >= 0", line_pos);
            pending->double_of_ribbon = true;
            pending->k = static_cast<std::size_t>(k);
        } else if (keyword == "cover_pi1") {
            pending->cover = parse_cover_form(rest, line_pos);
        } else if (keyword == "h2_cert") {
            const std::size_t sp2 = rest.find(' ');
            if (sp2 == std::string::npos)
                throw fp::ParseError("expected h2_cert rank=<n> source=\"<citation>\"", line_pos);
            const long rank = parse_assigned_long(rest.substr(0, sp2), "rank", line_pos);
            if (rank < 0) throw fp::ParseError("rank must be >= 0", line_pos);
            H2Certificate cert;
            cert.rank = static_cast<std::size_t>(rank);
            cert.provenance = CertProvenance::Literature;
            cert.source = parse_quoted_source(rest.substr(sp2 + 1), line_pos);
            pending->cert = std::move(cert);
        } else if (keyword == "summand") {
            const auto toks = split_ws(rest);
            if (toks.size() != 2 || toks[0] != "unknotted_rp2")
                throw fp::ParseError("expected summand unknotted_rp2 e=<+-2>", line_pos);
            const long e = parse_assigned_long(toks[1], "e", line_pos);
            try {
                pending->summands.push_back(make_unknotted(SurfaceType::rp2(), e));
            } catch (const std::invalid_argument& err) {
                throw fp::ParseError(err.what(), line_pos);
            }
        } else if (keyword == "connected_sum") {
            const auto names = split_ws(rest);
            if (names.empty())
                throw fp::ParseError("expected connected_sum <names...>", line_pos);
            pending->sum_names = names;
        } else if (keyword == "indecomposable_cert") {
            pending->indecomposable =
                IndecomposabilityCert{parse_quoted_source(rest, line_pos)};
        } else {
            throw fp::ParseError("unknown directive '" + keyword + "'", line_pos);
        }
        if (eol == text.size()) break;
    }
    flush();
    if (doc.surfaces.empty()) throw fp::ParseError("no surface declared", 0);
    return doc;
}

}  // namespace ksurf::obstruct
