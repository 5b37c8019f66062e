#include "ksurf/fpgroup.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <map>
#include <sstream>

namespace ksurf::fp {

namespace {

void push_reduced(std::vector<Letter>& out, Letter l) {
    if (!out.empty() && out.back() == -l) {
        out.pop_back();
    } else {
        out.push_back(l);
    }
}

}  // namespace

Word::Word(std::vector<Letter> raw) {
    letters_.reserve(raw.size());
    for (Letter l : raw) {
        if (l == 0) throw std::invalid_argument("Word: zero letter");
        push_reduced(letters_, l);
    }
}

Word Word::power(Letter g, long e) {
    if (g == 0) throw std::invalid_argument("Word::power: zero letter");
    Word w;
    const Letter l = e >= 0 ? g : -g;
    const unsigned long n = e >= 0 ? static_cast<unsigned long>(e)
                                   : -static_cast<unsigned long>(e);
    w.letters_.assign(n, l);
    return w;
}

Word Word::inverse() const {
    Word w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        w.letters_.push_back(-*it);
    return w;
}

Word Word::operator*(const Word& rhs) const {
    Word w;
    w.letters_ = letters_;
    for (Letter l : rhs.letters_) push_reduced(w.letters_, l);
    return w;
}

Word Word::cyclically_reduced() const {
    std::size_t lo = 0, hi = letters_.size();
    while (hi - lo >= 2 && letters_[lo] == -letters_[hi - 1]) {
        ++lo;
        --hi;
    }
    Word w;
    w.letters_.assign(letters_.begin() + lo, letters_.begin() + hi);
    return w;
}

int Word::max_generator() const {
    int m = 0;
    for (Letter l : letters_) m = std::max(m, std::abs(l));
    return m;
}

namespace {

bool valid_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace

Presentation::Presentation(std::vector<std::string> generator_names,
                           std::vector<Word> relators)
    : names_(std::move(generator_names)) {
    for (const auto& n : names_) {
        if (!valid_identifier(n))
            throw std::invalid_argument("Presentation: bad generator name '" + n + "'");
    }
    for (std::size_t i = 0; i < names_.size(); ++i)
        for (std::size_t j = i + 1; j < names_.size(); ++j)
            if (names_[i] == names_[j])
                throw std::invalid_argument("Presentation: duplicate generator name '" +
                                            names_[i] + "'");
    relators_.reserve(relators.size());
    for (const Word& r : relators) {
        if (r.max_generator() > static_cast<int>(names_.size()))
            throw std::invalid_argument("Presentation: relator uses unknown generator");
        Word red = r.cyclically_reduced();
        if (!red.empty()) relators_.push_back(std::move(red));
    }
}

std::string Presentation::word_str(const Word& w) const {
    if (w.empty()) return "1";
    std::ostringstream os;
    const auto& ls = w.letters();
    std::size_t i = 0;
    bool first = true;
    while (i < ls.size()) {
        std::size_t j = i;
        while (j < ls.size() && ls[j] == ls[i]) ++j;
        const long run = static_cast<long>(j - i);
        const long e = ls[i] > 0 ? run : -run;
        if (!first) os << '*';
        first = false;
        os << names_.at(static_cast<std::size_t>(std::abs(ls[i])) - 1);
        if (e != 1) os << '^' << e;
        i = j;
    }
    return os.str();
}

std::string Presentation::str() const {
    std::ostringstream os;
    os << '<';
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (i) os << ", ";
        os << names_[i];
    }
    os << " | ";
    for (std::size_t i = 0; i < relators_.size(); ++i) {
        if (i) os << ", ";
        os << word_str(relators_[i]);
    }
    os << '>';
    return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
    enum Kind {
        LAngle, RAngle, Pipe, Comma, Star, Caret, LParen, RParen, Ident, Int, End
    };
    Kind kind;
    std::string text;
    long value = 0;
    std::size_t pos = 0;
};

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        const std::size_t pos = i;
        auto single = [&](Token::Kind k) {
            out.push_back({k, std::string(1, c), 0, pos});
            ++i;
        };
        if (c == '<') single(Token::LAngle);
        else if (c == '>') single(Token::RAngle);
        else if (c == '|') single(Token::Pipe);
        else if (c == ',') single(Token::Comma);
        else if (c == '*') single(Token::Star);
        else if (c == '^') single(Token::Caret);
        else if (c == '(') single(Token::LParen);
        else if (c == ')') single(Token::RParen);
        else if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < n && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                             text[j] == '_'))
                ++j;
            out.push_back({Token::Ident, std::string(text.substr(i, j - i)), 0, pos});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
            std::size_t j = i + (c == '-' ? 1 : 0);
            const std::size_t digits_from = j;
            while (j < n && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            if (j == digits_from) throw ParseError("expected digits after '-'", pos);
            long v = 0;
            try {
                v = std::stol(std::string(text.substr(i, j - i)));
            } catch (const std::out_of_range&) {
                throw ParseError("integer out of range", pos);
            }
            out.push_back({Token::Int, std::string(text.substr(i, j - i)), v, pos});
            i = j;
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", pos);
        }
    }
    out.push_back({Token::End, "", 0, n});
    return out;
}

class Parser {
  public:
    Parser(std::vector<Token> tokens, const std::vector<std::string>* names)
        : toks_(std::move(tokens)), names_(names) {}

    const Token& peek() const { return toks_[i_]; }
    Token next() { return toks_[i_++]; }

    Token expect(Token::Kind k, const char* what) {
        if (peek().kind != k) throw ParseError(std::string("expected ") + what, peek().pos);
        return next();
    }

    void set_names(const std::vector<std::string>* names) { names_ = names; }

    Letter lookup(const Token& t) const {
        for (std::size_t g = 0; g < names_->size(); ++g)
            if ((*names_)[g] == t.text) return static_cast<Letter>(g + 1);
        throw ParseError("unknown generator '" + t.text + "'", t.pos);
    }

    long exponent() {
        const Token t = expect(Token::Int, "integer exponent");
        if (t.value == 0) throw ParseError("zero exponent", t.pos);
        if (t.value > 1000000 || t.value < -1000000)
            throw ParseError("exponent out of range", t.pos);
        return t.value;
    }

    Word word() {
        Word w = factor();
        while (peek().kind == Token::Star) {
            next();
            w = w * factor();
        }
        return w;
    }

    Word factor() {
        if (peek().kind == Token::Ident) {
            const Token t = next();
            const Letter g = lookup(t);
            if (peek().kind == Token::Caret) {
                next();
                return Word::power(g, exponent());
            }
            return Word::power(g, 1);
        }
        if (peek().kind == Token::LParen) {
            next();
            const Word base = word();
            expect(Token::RParen, "')'");
            expect(Token::Caret, "'^' after ')'");
            const long e = exponent();
            const Word b = e >= 0 ? base : base.inverse();
            Word out;
            for (long k = 0; k < std::abs(e); ++k) out = out * b;
            return out;
        }
        throw ParseError("expected generator or '('", peek().pos);
    }

  private:
    std::vector<Token> toks_;
    std::size_t i_ = 0;
    const std::vector<std::string>* names_;
};

}  // namespace

Presentation parse_presentation(std::string_view text) {
    Parser p(lex(text), nullptr);
    p.expect(Token::LAngle, "'<'");
    std::vector<std::string> names;
    if (p.peek().kind == Token::Ident) {
        names.push_back(p.next().text);
        while (p.peek().kind == Token::Comma) {
            p.next();
            const Token t = p.expect(Token::Ident, "generator name");
            if (std::find(names.begin(), names.end(), t.text) != names.end())
                throw ParseError("duplicate generator name '" + t.text + "'", t.pos);
            names.push_back(t.text);
        }
    }
    p.set_names(&names);
    p.expect(Token::Pipe, "'|'");
    std::vector<Word> relators;
    if (p.peek().kind != Token::RAngle) {
        relators.push_back(p.word());
        while (p.peek().kind == Token::Comma) {
            p.next();
            relators.push_back(p.word());
        }
    }
    p.expect(Token::RAngle, "'>'");
    p.expect(Token::End, "end of input");
    return Presentation(std::move(names), std::move(relators));
}

Word parse_word(std::string_view text, const Presentation& pres) {
    Parser p(lex(text), &pres.generator_names());
    Word w = p.word();
    p.expect(Token::End, "end of input");
    return w;
}

std::vector<Word> parse_word_list(std::string_view text, const Presentation& pres) {
    Parser p(lex(text), &pres.generator_names());
    std::vector<Word> out;
    if (p.peek().kind == Token::End) return out;
    out.push_back(p.word());
    while (p.peek().kind == Token::Comma) {
        p.next();
        out.push_back(p.word());
    }
    p.expect(Token::End, "end of input");
    return out;
}

// ---------------------------------------------------------------------------
// Invariants

exact::IntMatrix relator_exponent_matrix(const Presentation& p) {
    exact::IntMatrix m(p.relators().size(), p.generator_count());
    for (std::size_t r = 0; r < p.relators().size(); ++r)
        for (Letter l : p.relators()[r].letters()) {
            const std::size_t g = static_cast<std::size_t>(std::abs(l)) - 1;
            m(r, g) += l > 0 ? 1 : -1;
        }
    return m;
}

AbelianInvariants abelianization(const Presentation& p) {
    const exact::SmithResult snf = exact::smith_normal_form(relator_exponent_matrix(p));
    AbelianInvariants a;
    a.betti = p.generator_count() - snf.rank;
    for (const exact::Int& d : snf.invariant_factors)
        if (d > 1) a.torsion.push_back(d);
    return a;
}

std::string to_string(const AbelianInvariants& a) {
    if (a.trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    auto sep = [&] {
        if (!first) os << " + ";
        first = false;
    };
    if (a.betti > 0) {
        sep();
        os << 'Z';
        if (a.betti > 1) os << '^' << a.betti;
    }
    for (const exact::Int& d : a.torsion) {
        sep();
        os << "Z/" << d.get_str();
    }
    return os.str();
}

long deficiency(const Presentation& p) {
    return static_cast<long>(p.generator_count()) - static_cast<long>(p.relators().size());
}

std::size_t b2_upper_bound(const Presentation& p) {
    // relators - generators + betti = relators - rank(exponent matrix) >= 0.
    const long v = static_cast<long>(p.relators().size()) -
                   static_cast<long>(p.generator_count()) +
                   static_cast<long>(abelianization(p).betti);
    return v > 0 ? static_cast<std::size_t>(v) : 0;
}

Presentation free_product(const Presentation& a, const Presentation& b) {
    std::vector<std::string> names = a.generator_names();
    for (const std::string& n : b.generator_names()) {
        std::string candidate = n;
        int k = 2;
        while (std::find(names.begin(), names.end(), candidate) != names.end())
            candidate = n + "_" + std::to_string(k++);
        names.push_back(candidate);
    }
    std::vector<Word> relators = a.relators();
    const int shift = static_cast<int>(a.generator_count());
    for (const Word& r : b.relators()) {
        std::vector<Letter> ls = r.letters();
        for (Letter& l : ls) l = l > 0 ? l + shift : l - shift;
        relators.emplace_back(std::move(ls));
    }
    return Presentation(std::move(names), std::move(relators));
}

Presentation quotient_by(const Presentation& p, const std::vector<Word>& extra) {
    std::vector<Word> relators = p.relators();
    relators.insert(relators.end(), extra.begin(), extra.end());
    return Presentation(p.generator_names(), std::move(relators));
}

Presentation triangle_presentation(long p, long q, long r) {
    if (p < 2 || q < 2 || r < 2)
        throw std::invalid_argument("triangle_presentation: parameters must be >= 2");
    return Presentation({"x", "y", "z"},
                        {Word::power(1, p), Word::power(2, q), Word::power(3, r),
                         Word({1, 2, 3})});
}

}  // namespace ksurf::fp
