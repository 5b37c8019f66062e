#pragma once

// Symbolic knotted-surface calculus: surface specifications, branched-cover
// invariants, restricted intersection forms, and the three certified decision
// procedures (stable irreducibility, no sphere-sum-unknotted splitting, no
// RP2 # RP2 splitting of the Klein bottle), each with a machine-replayable
// proof trace.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ksurf/fpgroup.hpp"

namespace ksurf::obstruct {

struct SurfaceType {
    bool orientable = true;
    long genus = 0;      // orientable case
    long crosscaps = 0;  // non-orientable case, >= 1

    static SurfaceType orientable_genus(long g);
    static SurfaceType nonorientable_crosscaps(long c);
    static SurfaceType sphere() { return orientable_genus(0); }
    static SurfaceType torus() { return orientable_genus(1); }
    static SurfaceType rp2() { return nonorientable_crosscaps(1); }
    static SurfaceType klein_bottle() { return nonorientable_crosscaps(2); }

    long euler_characteristic() const;  // 2 - 2*genus or 2 - crosscaps
    std::string str() const;

    bool operator==(const SurfaceType& other) const = default;
};

enum class CertProvenance { Literature, FreeProductAdditivity, Assumed };

// Certified rank of H_2 of a cover fundamental group.  H_2 of a general
// finitely presented group is not computable; ranks enter as literature
// certificates (or additivity over certified summands) and are gated against
// the presentation 2-complex bound at construction.
struct H2Certificate {
    std::size_t rank = 0;
    CertProvenance provenance = CertProvenance::Literature;
    std::string source;  // citation text

    bool operator==(const H2Certificate& other) const = default;
};

struct DoubleOfRibbon {
    SurfaceType type;  // chi = 2 - 2k
    std::size_t k = 0;
    fp::Presentation cover_pi1;
    H2Certificate h2_cert;
    long normal_euler = 0;  // doubles always have normal Euler number 0

    bool operator==(const DoubleOfRibbon& other) const = default;
};

struct TwoKnot {
    std::string name;  // pi1 of the cover stays symbolic; only b2 = 0 is used

    bool operator==(const TwoKnot& other) const = default;
};

struct Unknotted {
    SurfaceType type;
    long normal_euler = 0;  // +-2 for RP2, 0 for orientable

    bool operator==(const Unknotted& other) const = default;
};

struct SurfaceSpec;

struct ConnectedSum {
    std::vector<SurfaceSpec> parts;  // flattened: no nested sums; size >= 2
};
bool operator==(const ConnectedSum& a, const ConnectedSum& b);

struct SurfaceSpec {
    std::variant<DoubleOfRibbon, TwoKnot, Unknotted, ConnectedSum> v;

    template <class T>
    bool is() const {
        return std::holds_alternative<T>(v);
    }
    template <class T>
    const T& as() const {
        return std::get<T>(v);
    }

    bool operator==(const SurfaceSpec& other) const;
};

// Validating factories (all throw std::invalid_argument on violations).
// make_double_of_ribbon enforces chi(type) = 2 - 2k and the certificate gate
// rank <= fp::b2_upper_bound(cover_pi1).
SurfaceSpec make_double_of_ribbon(SurfaceType type, std::size_t k,
                                  fp::Presentation cover_pi1, H2Certificate cert);
SurfaceSpec make_two_knot(std::string name);
SurfaceSpec make_unknotted(SurfaceType type, long normal_euler);
SurfaceSpec make_connected_sum(std::vector<SurfaceSpec> parts);  // flattens

long euler_characteristic(const SurfaceSpec& s);  // chi(A # B) = chi(A) + chi(B) - 2

enum class SpinParity { Even, Odd, Unknown };

struct CoverInvariants {
    std::size_t b2 = 0;
    std::size_t b_plus = 0;
    std::size_t b_minus = 0;  // b_plus + b_minus = b2 (b_zero = 0 throughout)
    fp::Presentation pi1;
    std::size_t pi1_h2_rank = 0;
    SpinParity spin_parity = SpinParity::Unknown;

    long signature() const { return static_cast<long>(b_plus) - static_cast<long>(b_minus); }
};

CoverInvariants cover_invariants(const SurfaceSpec& s);

// Hopf sequence: rank of im(pi_2 -> H_2) = b2 - pi1_h2_rank.  Throws if the
// certificate exceeds b2.
std::size_t pi2_image_rank(const CoverInvariants& c);

struct RestrictedFormSummary {
    std::size_t total_rank = 0;
    std::size_t zero_summand_rank = 0;
    std::size_t pos = 0;
    std::size_t neg = 0;
    bool lower_bound = false;  // true when pos/neg are only bounds from below

    std::size_t nondegenerate_rank() const { return pos + neg; }
    bool operator==(const RestrictedFormSummary& other) const = default;
};

// Restriction of the intersection form to im(pi_2 -> H_2) for core # stabilizers:
// the ribbon-double core contributes a rank-k zero summand (disjoint
// square-zero spheres), each unknotted stabilizer its +-1 or hyperbolic
// classes.  Core must be a DoubleOfRibbon; stabilizers must be Unknotted.
RestrictedFormSummary restricted_form(const SurfaceSpec& core,
                                      const std::vector<SurfaceSpec>& stabilizers);

// The hypothetical side of the theorem: only a lower bound on the
// nondegenerate part is known.
RestrictedFormSummary restricted_form_lower_bound(std::size_t l_plus, std::size_t l_minus);

// ---------------------------------------------------------------------------
// Proof traces and verdicts

enum class Rel { Eq, Ne, Lt, Le, Gt, Ge };

struct TraceCheck {
    long long lhs = 0;
    Rel rel = Rel::Eq;
    long long rhs = 0;

    bool holds() const;
    std::string str() const;
    bool operator==(const TraceCheck& other) const = default;
};

struct TraceLine {
    std::string statement;
    std::string rule;                // justification tag
    std::vector<TraceCheck> checks;  // empty for documentation lines

    bool operator==(const TraceLine& other) const = default;
};

struct ProofTrace {
    std::vector<TraceLine> lines;

    bool replay() const;  // every check on every line re-evaluates true
    std::string str() const;
    bool operator==(const ProofTrace& other) const = default;
};

enum class Conclusion { StablyIrreducible, NotSphereSumUnknotted, NoRp2Splitting, Inconclusive };

std::string to_string(Conclusion c);

struct Verdict {
    Conclusion conclusion = Conclusion::Inconclusive;
    std::string reason;  // failed hypothesis when Inconclusive
    std::string note;    // derived side notes
    ProofTrace trace;
};

// Inconclusive reasons (exact strings, relied on by callers and tests).
inline constexpr char kReasonNotRibbonDouble[] = "not a double of a ribbon surface";
inline constexpr char kReasonChiNotLess2[] = "chi not < 2";
inline constexpr char kReasonCertRankMismatch[] = "certificate rank != k";
inline constexpr char kReasonCertExceedsBound[] = "certificate rank exceeds b2 upper bound";
inline constexpr char kReasonB2Pi1Zero[] = "b2(pi1) = 0";
inline constexpr char kReasonNoIndecompCert[] = "no indecomposability certificate";

// Stable irreducibility of a ribbon double: hypothesis gates, then the
// restricted-form contradiction replayed over every stabilizer pair
// 0 <= l < l' <= sweep_bound (ordered by (l', l), so traces at smaller bounds
// are byte-for-byte prefixes).  Never a false positive: gate failures yield
// Inconclusive.
Verdict check_theorem(const SurfaceSpec& s, std::size_t sweep_bound = 10);
Verdict check_theorem_serial(const SurfaceSpec& s, std::size_t sweep_bound = 10);

// The splitting obstruction 0 = b2(cover of 2-knot) >= b2(pi1) > 0.  Throws
// std::invalid_argument on sphere input (chi >= 2).
Verdict check_proposition(const SurfaceSpec& s);

struct IndecomposabilityCert {
    std::string source;  // citation for free-product indecomposability of pi1
};

// Klein-bottle ribbon double does not split as RP2 # RP2.  Throws unless s is
// a Klein-bottle DoubleOfRibbon; missing certificate yields Inconclusive.
Verdict check_remark_rp2_split(const SurfaceSpec& s,
                               const std::optional<IndecomposabilityCert>& cert);

// The degree-l member of the construction family: a genus-l (orientable) or
// 2l-crosscap (non-orientable) ribbon double with cover pi1 the free product
// of l triangle-(2,3,7) groups and certificate rank l.
SurfaceSpec corollary_surface(std::size_t ell, bool orientable);

// ---------------------------------------------------------------------------
// Surface spec files (line oriented; '#' comments allowed):
//   surface <name>
//   type torus|klein|orientable g=<n>|nonorientable c=<n>
//   construction double_of_ribbon k=<n>
//   cover_pi1 <presentation | triangle(p,q,r) | free_product(form, ...)>
//   h2_cert rank=<n> source="<citation>"
//   summand unknotted_rp2 e=<+-2>
//   connected_sum <names...>
//   indecomposable_cert source="<citation>"

struct SurfaceFileEntry {
    std::string name;
    SurfaceSpec spec;
    std::optional<IndecomposabilityCert> indecomposable;
};

struct SurfaceDocument {
    std::vector<SurfaceFileEntry> surfaces;  // document order

    // The surface the checks run on: the last one declared.
    const SurfaceFileEntry& subject() const;
};

SurfaceDocument parse_surface_document(std::string_view text);

}  // namespace ksurf::obstruct
