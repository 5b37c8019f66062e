#include "ksurf/pretzel.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "ksurf/fpgroup.hpp"
#include "ksurf/parallel.hpp"

namespace ksurf::pretzel {

PretzelKnot PretzelKnot::make(std::vector<long> twists) {
    if (twists.size() < 3)
        throw std::invalid_argument("PretzelKnot: need at least 3 strands");
    for (long e : twists)
        if (e == 0) throw std::invalid_argument("PretzelKnot: zero twist");
    PretzelKnot k;
    k.twists_ = std::move(twists);
    return k;
}

PretzelKnot PretzelKnot::parse(std::string_view text) {
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i >= text.size() || text[i] != 'P') throw fp::ParseError("expected 'P'", i);
    ++i;
    skip_ws();
    if (i >= text.size() || text[i] != '(') throw fp::ParseError("expected '('", i);
    ++i;
    std::vector<long> twists;
    for (;;) {
        skip_ws();
        const std::size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        const std::size_t digits = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == digits) throw fp::ParseError("expected integer", start);
        long v;
        try {
            v = std::stol(std::string(text.substr(start, i - start)));
        } catch (const std::out_of_range&) {
            throw fp::ParseError("integer out of range", start);
        }
        twists.push_back(v);
        skip_ws();
        if (i < text.size() && text[i] == ',') {
            ++i;
            continue;
        }
        break;
    }
    if (i >= text.size() || text[i] != ')') throw fp::ParseError("expected ')'", i);
    ++i;
    skip_ws();
    if (i != text.size()) throw fp::ParseError("trailing input", i);
    try {
        return make(std::move(twists));
    } catch (const std::invalid_argument& e) {
        throw fp::ParseError(e.what(), 0);
    }
}

bool PretzelKnot::is_knot() const {
    std::size_t even = 0;
    for (long e : twists_)
        if (e % 2 == 0) ++even;
    return even <= 1;
}

std::string PretzelKnot::str() const {
    std::ostringstream os;
    os << "P(";
    for (std::size_t i = 0; i < twists_.size(); ++i) os << (i ? "," : "") << twists_[i];
    os << ')';
    return os.str();
}

exact::SymmetricForm goeritz_matrix(const PretzelKnot& k) {
    const std::size_t n = k.strand_count();
    exact::IntMatrix m(n - 1, n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        m(i, i) = exact::Int(k.twists()[i]) + exact::Int(k.twists()[i + 1]);
        if (i + 2 < n) {
            m(i, i + 1) = -exact::Int(k.twists()[i + 1]);
            m(i + 1, i) = m(i, i + 1);
        }
    }
    return exact::SymmetricForm(m);
}

exact::Int determinant(const PretzelKnot& k) {
    const exact::Int goeritz = exact::determinant(goeritz_matrix(k).matrix());
    exact::Int multilinear = 0;
    for (std::size_t i = 0; i < k.strand_count(); ++i) {
        exact::Int term = 1;
        for (std::size_t j = 0; j < k.strand_count(); ++j)
            if (j != i) term *= k.twists()[j];
        multilinear += term;
    }
    if (abs(goeritz) != abs(multilinear))
        throw std::logic_error("pretzel determinant: Goeritz and multilinear routes disagree");
    return abs(goeritz);
}

seifert::SeifertInvariants double_branched_cover(const PretzelKnot& k) {
    if (k.strand_count() != 3)
        throw std::invalid_argument("double_branched_cover: only 3-strand pretzels supported");
    std::vector<seifert::Fiber> fibers;
    for (long e : k.twists()) fibers.push_back({e, -1});  // fiber -1/e
    return seifert::SeifertInvariants::make(0, std::move(fibers));
}

namespace {

SweepResult sweep_impl(long lo, long hi, bool parallel) {
    if (lo > hi) throw std::invalid_argument("crosscheck_sweep: empty range");
    std::vector<long> values;
    for (long v = lo; v <= hi; ++v)
        if (v != 0) values.push_back(v);
    const std::size_t m = values.size();
    const std::size_t total = m * m * m;

    // 0 = determinant zero (skipped), 1 = match, 2 = mismatch.
    std::vector<unsigned char> outcome(total, 0);
    parallel_for(
        0, static_cast<std::ptrdiff_t>(total),
        [&](std::ptrdiff_t flat) {
            const std::size_t f = static_cast<std::size_t>(flat);
            const long e1 = values[f / (m * m)];
            const long e2 = values[(f / m) % m];
            const long e3 = values[f % m];
            const PretzelKnot k = PretzelKnot::make({e1, e2, e3});
            const exact::Int det = determinant(k);
            if (det == 0) return;
            const auto h1 = seifert::h1_order(double_branched_cover(k));
            outcome[f] = (h1 && *h1 == det) ? 1 : 2;
        },
        parallel);

    SweepResult r;
    for (unsigned char o : outcome) {
        if (o == 0) ++r.skipped;
        else if (o == 1) ++r.checked;
        else { ++r.checked; ++r.mismatches; }
    }
    return r;
}

}  // namespace

SweepResult crosscheck_sweep(long lo, long hi) { return sweep_impl(lo, hi, true); }
SweepResult crosscheck_sweep_serial(long lo, long hi) { return sweep_impl(lo, hi, false); }

}  // namespace ksurf::pretzel
