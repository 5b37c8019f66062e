#pragma once

// Finitely presented groups: freely reduced words, presentations with the
// text grammar  <gens | relators>,  abelianization via Smith normal form,
// deficiency, free products and quotients.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ksurf/exact.hpp"

namespace ksurf::fp {

// A letter is a nonzero int: +g is generator g (1-based), -g its inverse.
using Letter = int;

inline Letter inverse(Letter l) { return -l; }

class Word {
  public:
    Word() = default;
    explicit Word(std::vector<Letter> raw);  // freely reduces
    static Word power(Letter g, long e);     // g^e, e may be negative or zero

    const std::vector<Letter>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    std::size_t size() const { return letters_.size(); }

    Word inverse() const;
    Word operator*(const Word& rhs) const;  // concatenate and reduce
    Word cyclically_reduced() const;
    int max_generator() const;  // 0 for the empty word

    bool operator==(const Word& other) const = default;

  private:
    std::vector<Letter> letters_;  // freely reduced
};

struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position(position) {}
    std::size_t position;
};

class Presentation {
  public:
    Presentation() = default;
    // Relators are freely and cyclically reduced; relators that reduce to the
    // empty word are dropped.  Throws std::invalid_argument if a relator
    // references a generator out of range or names are not unique.
    Presentation(std::vector<std::string> generator_names, std::vector<Word> relators);

    std::size_t generator_count() const { return names_.size(); }
    const std::vector<std::string>& generator_names() const { return names_; }
    const std::vector<Word>& relators() const { return relators_; }

    std::string str() const;                  // "<x, y | x^2, ...>" grammar form
    std::string word_str(const Word& w) const;

    bool operator==(const Presentation& other) const = default;

  private:
    std::vector<std::string> names_;
    std::vector<Word> relators_;
};

// Grammar: '<' names '|' relator-list '>'; names are comma-separated
// identifiers [a-zA-Z][a-zA-Z0-9_]*; a relator is a '*'-separated product of
// name, name^k (k a nonzero integer) and (word)^k; whitespace insignificant;
// the relator list may be empty.  Throws ParseError with the offending
// position.
Presentation parse_presentation(std::string_view text);

// A single word / a comma-separated word list over p's generators.
Word parse_word(std::string_view text, const Presentation& p);
std::vector<Word> parse_word_list(std::string_view text, const Presentation& p);

struct AbelianInvariants {
    std::size_t betti = 0;               // rank of the free part
    std::vector<exact::Int> torsion;     // invariant factors > 1, divisibility chain
    bool trivial() const { return betti == 0 && torsion.empty(); }
    bool operator==(const AbelianInvariants& other) const = default;
};

std::string to_string(const AbelianInvariants& a);

// Exponent-sum matrix, one row per relator, one column per generator.
exact::IntMatrix relator_exponent_matrix(const Presentation& p);

AbelianInvariants abelianization(const Presentation& p);

long deficiency(const Presentation& p);  // #generators - #relators

// max(0, #relators - #generators + betti): the second Betti number of the
// presentation 2-complex, an upper bound for b2 of the group.
std::size_t b2_upper_bound(const Presentation& p);

// Disjoint union of generators and relators; clashing names from b get a
// fresh "_k" suffix.
Presentation free_product(const Presentation& a, const Presentation& b);

Presentation quotient_by(const Presentation& p, const std::vector<Word>& extra);

// <x, y, z | x^p, y^q, z^r, x*y*z>; throws std::invalid_argument if any
// parameter is < 2.
Presentation triangle_presentation(long p, long q, long r);

}  // namespace ksurf::fp
