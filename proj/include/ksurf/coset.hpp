#pragma once

// Coset machinery over ksurf::fp presentations: permutation images and
// finite quotients, HLT Todd-Coxeter enumeration with coincidence handling,
// and Reidemeister-Schreier subgroup presentations.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ksurf/fpgroup.hpp"

namespace ksurf::fp {

class Perm {
  public:
    Perm() = default;
    explicit Perm(std::vector<int> images);  // throws if not a permutation
    static Perm identity(std::size_t degree);

    std::size_t degree() const { return images_.size(); }
    int apply(int point) const { return images_.at(static_cast<std::size_t>(point)); }
    const std::vector<int>& images() const { return images_; }

    Perm then(const Perm& next) const;  // apply *this first, then next
    Perm inverse() const;
    bool is_identity() const;
    unsigned long order() const;  // lcm of cycle lengths

    bool operator==(const Perm& other) const = default;

  private:
    std::vector<int> images_;
};

Perm perm_of_word(const Word& w, const std::vector<Perm>& images);

struct RejectWitness {
    std::size_t relator_index;  // relator whose image isn't the identity
    int moved_point;            // first point it moves
};

// nullopt iff mapping generator i -> images[i] kills every relator.  Throws
// std::invalid_argument on arity or degree mismatch.
std::optional<RejectWitness> check_homomorphism(const Presentation& p,
                                                const std::vector<Perm>& images);

// BFS closure of <images> under right multiplication, identity first;
// deterministic order.  nullopt if the group has more than max_elements
// elements.
std::optional<std::vector<Perm>> quotient_group_elements(
    const std::vector<Perm>& images, std::size_t max_elements = 1000000);

std::optional<unsigned long> quotient_group_order(const std::vector<Perm>& images,
                                                  std::size_t max_elements = 1000000);

struct FiniteQuotient {
    Presentation presentation;
    std::vector<Perm> images;  // one per generator, a verified homomorphism
};

// A closed coset table on cosets 0..coset_count-1 for a subgroup H: coset 0
// is H, columns are the generator actions and their inverses.
class CosetTable {
  public:
    CosetTable() = default;
    CosetTable(std::size_t coset_count, std::size_t generator_count);

    std::size_t coset_count() const { return cosets_; }
    std::size_t generator_count() const { return gens_; }

    int& entry(int coset, Letter l);
    int entry(int coset, Letter l) const;
    int act(int coset, Letter l) const { return entry(coset, l); }
    int trace(int coset, const Word& w) const;

    // nullopt if the table is a valid coset table for (p, subgroup_gens):
    // complete, columns inverse-consistent permutations, all relators trace
    // trivially from every coset and subgroup generators fix coset 0.
    // Otherwise a description of the first failure.
    std::optional<std::string> validate(const Presentation& p,
                                        const std::vector<Word>& subgroup_gens) const;

  private:
    std::size_t cosets_ = 0;
    std::size_t gens_ = 0;
    std::vector<int> tab_;  // cosets_ x 2*gens_, -1 = undefined

    std::size_t column(Letter l) const;
};

// HLT Todd-Coxeter with immediate coincidence processing; enumerates the
// cosets of <subgroup_gens> in the group presented by p.  nullopt if more
// than max_cosets cosets get defined (soft overflow).
std::optional<CosetTable> todd_coxeter(const Presentation& p,
                                       const std::vector<Word>& subgroup_gens,
                                       std::size_t max_cosets = 100000);

// Regular action of a finite quotient: cosets of the kernel of
// presentation -> <images>, coset 0 the kernel itself.  nullopt if the
// quotient has more than max_elements elements.
std::optional<CosetTable> coset_table_from_quotient(const FiniteQuotient& q,
                                                    std::size_t max_elements = 1000000);

// Presentation of the subgroup a coset table enumerates, on Schreier
// generators x_0, x_1, ... (one per non-tree edge of a BFS spanning tree of
// the coset graph); generator_count == cosets*gens - (cosets-1).  relators
// holds one rewritten word per (coset, relator) pair, row-major, freely
// reduced, possibly empty.
struct SchreierResult {
    std::size_t generator_count = 0;
    std::vector<Word> relators;

    Presentation presentation() const;  // drops empty relators
};

SchreierResult reidemeister_schreier(const Presentation& p, const CosetTable& t);
SchreierResult reidemeister_schreier_serial(const Presentation& p, const CosetTable& t);

}  // namespace ksurf::fp
