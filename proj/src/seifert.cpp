#include "ksurf/seifert.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ksurf::seifert {

SeifertInvariants SeifertInvariants::make(long b, std::vector<Fiber> fibers) {
    SeifertInvariants s;
    s.b_ = b;
    for (Fiber f : fibers) {
        if (f.alpha == 0) throw std::invalid_argument("SeifertInvariants: alpha = 0");
        const long g = std::gcd(f.alpha, f.beta);
        if (g > 1) {
            f.alpha /= g;
            f.beta /= g;
        }
        if (f.alpha < 0) {
            f.alpha = -f.alpha;
            f.beta = -f.beta;
        }
        if (f.alpha == 1) {
            s.b_ += f.beta;  // integer fiber: fold into the section
        } else {
            s.fibers_.push_back(f);
        }
    }
    return s;
}

namespace {

// Minimal hand parser; positions reported through fp::ParseError.
struct Cursor {
    std::string_view text;
    std::size_t i = 0;

    void skip_ws() {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    }
    bool eat(char c) {
        skip_ws();
        if (i < text.size() && text[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c, const char* what) {
        if (!eat(c)) throw fp::ParseError(std::string("expected ") + what, i);
    }
    long integer() {
        skip_ws();
        const std::size_t start = i;
        if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
        const std::size_t digits = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == digits) throw fp::ParseError("expected integer", start);
        try {
            return std::stol(std::string(text.substr(start, i - start)));
        } catch (const std::out_of_range&) {
            throw fp::ParseError("integer out of range", start);
        }
    }
    void expect_end() {
        skip_ws();
        if (i != text.size()) throw fp::ParseError("trailing input", i);
    }
};

}  // namespace

SeifertInvariants SeifertInvariants::parse(std::string_view text) {
    Cursor c{text};
    c.skip_ws();
    if (text.substr(c.i, 2) != "S2") throw fp::ParseError("expected 'S2'", c.i);
    c.i += 2;
    c.expect('(', "'('");
    const long b = c.integer();
    std::vector<Fiber> fibers;
    if (c.eat(';')) {
        c.skip_ws();
        if (c.i < text.size() && text[c.i] != ')') {
            for (;;) {
                const long beta = c.integer();
                const std::size_t slash_pos = c.i;
                c.expect('/', "'/'");
                const long alpha = c.integer();
                if (alpha <= 0)
                    throw fp::ParseError("denominator must be positive", slash_pos);
                fibers.push_back({alpha, beta});
                if (!c.eat(',')) break;
            }
        }
    }
    c.expect(')', "')'");
    c.expect_end();
    return make(b, std::move(fibers));
}

std::string SeifertInvariants::str() const {
    std::ostringstream os;
    os << "S2(" << b_ << ';';
    for (std::size_t i = 0; i < fibers_.size(); ++i) {
        os << (i ? ", " : " ") << fibers_[i].beta << '/' << fibers_[i].alpha;
    }
    os << ')';
    return os.str();
}

exact::Rat euler_number(const SeifertInvariants& s) {
    exact::Rat sum(s.b());
    for (const Fiber& f : s.fibers()) {
        exact::Rat q(f.beta, f.alpha);
        q.canonicalize();
        sum += q;
    }
    return -sum;
}

fp::Presentation pi1_presentation(const SeifertInvariants& s) {
    const std::size_t n = s.fibers().size();
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    names.push_back("h");
    const fp::Letter h = static_cast<fp::Letter>(n + 1);

    std::vector<fp::Word> relators;
    for (std::size_t i = 1; i <= n; ++i) {
        const fp::Letter x = static_cast<fp::Letter>(i);
        relators.push_back(fp::Word({x, h, -x, -h}));
    }
    for (std::size_t i = 1; i <= n; ++i) {
        const fp::Letter x = static_cast<fp::Letter>(i);
        relators.push_back(fp::Word::power(x, s.fibers()[i - 1].alpha) *
                           fp::Word::power(h, s.fibers()[i - 1].beta));
    }
    fp::Word product;
    for (std::size_t i = 1; i <= n; ++i)
        product = product * fp::Word::power(static_cast<fp::Letter>(i), 1);
    relators.push_back(product * fp::Word::power(h, -s.b()));

    return fp::Presentation(std::move(names), std::move(relators));
}

std::optional<exact::Int> h1_order(const SeifertInvariants& s) {
    const fp::AbelianInvariants a = fp::abelianization(pi1_presentation(s));
    const exact::Rat e = euler_number(s);

    if (a.betti > 0) {
        if (e != 0)
            throw std::logic_error("h1_order: infinite H1 with nonzero euler number");
        return std::nullopt;
    }
    exact::Int order = 1;
    for (const exact::Int& d : a.torsion) order *= d;

    // Closed formula: |H1| = |alpha_1 ... alpha_n * e| when e != 0.
    exact::Rat scaled = e;
    for (const Fiber& f : s.fibers()) scaled *= f.alpha;
    if (scaled.get_den() != 1 || order != abs(exact::Int(scaled.get_num())))
        throw std::logic_error("h1_order: SNF order disagrees with alpha-product formula");
    return order;
}

fp::Presentation kill_regular_fiber(const SeifertInvariants& s) {
    const std::size_t n = s.fibers().size();
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));

    std::vector<fp::Word> relators;
    for (std::size_t i = 1; i <= n; ++i)
        relators.push_back(fp::Word::power(static_cast<fp::Letter>(i), s.fibers()[i - 1].alpha));
    fp::Word product;
    for (std::size_t i = 1; i <= n; ++i)
        product = product * fp::Word::power(static_cast<fp::Letter>(i), 1);
    relators.push_back(product);

    return fp::Presentation(std::move(names), std::move(relators));
}

bool matches_triangle(const fp::Presentation& P, long p, long q, long r) {
    if (P.generator_count() != 3 || P.relators().size() != 4) return false;

    std::vector<long> exponent_of(4, 0);  // generator -> power-relator exponent
    std::vector<fp::Word> products;
    for (const fp::Word& w : P.relators()) {
        const auto& ls = w.letters();
        const bool single_gen =
            !ls.empty() && std::all_of(ls.begin(), ls.end(),
                                       [&](fp::Letter l) { return l == ls[0]; });
        if (single_gen && ls.size() >= 2) {
            const int g = std::abs(ls[0]);
            if (exponent_of[g] != 0) return false;  // two power relators on one generator
            exponent_of[g] = static_cast<long>(ls.size());
        } else {
            products.push_back(w);
        }
    }
    if (products.size() != 1) return false;
    if (exponent_of[1] == 0 || exponent_of[2] == 0 || exponent_of[3] == 0) return false;

    // Orient the product relator: must be the three generators once each,
    // all with the same sign.
    auto ls = products[0].letters();
    if (ls.size() != 3) return false;
    if (ls[0] < 0) for (fp::Letter& l : ls) l = -l;
    std::vector<int> seen_gens{std::abs(ls[0]), std::abs(ls[1]), std::abs(ls[2])};
    std::sort(seen_gens.begin(), seen_gens.end());
    if (seen_gens != std::vector<int>{1, 2, 3}) return false;
    if (!(ls[0] > 0 && ls[1] > 0 && ls[2] > 0)) return false;

    std::vector<long> got{exponent_of[1], exponent_of[2], exponent_of[3]};
    std::vector<long> want{p, q, r};
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    return got == want;
}

SeifertInvariants normalization_move(const SeifertInvariants& s, std::size_t fiber_index) {
    if (fiber_index >= s.fibers().size())
        throw std::invalid_argument("normalization_move: fiber index out of range");
    std::vector<Fiber> fibers = s.fibers();
    fibers[fiber_index].beta -= fibers[fiber_index].alpha;
    return SeifertInvariants::make(s.b() + 1, std::move(fibers));
}

}  // namespace ksurf::seifert
