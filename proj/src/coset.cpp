#include "ksurf/coset.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ksurf/parallel.hpp"

namespace ksurf::fp {

Perm::Perm(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (int v : images_) {
        if (v < 0 || v >= static_cast<int>(images_.size()) || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("Perm: not a permutation");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

Perm Perm::identity(std::size_t degree) {
    std::vector<int> v(degree);
    std::iota(v.begin(), v.end(), 0);
    return Perm(std::move(v));
}

Perm Perm::then(const Perm& next) const {
    if (degree() != next.degree()) throw std::invalid_argument("Perm::then: degree mismatch");
    std::vector<int> v(degree());
    for (std::size_t i = 0; i < degree(); ++i)
        v[i] = next.images_[static_cast<std::size_t>(images_[i])];
    return Perm(std::move(v));
}

Perm Perm::inverse() const {
    std::vector<int> v(degree());
    for (std::size_t i = 0; i < degree(); ++i)
        v[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
    return Perm(std::move(v));
}

bool Perm::is_identity() const {
    for (std::size_t i = 0; i < degree(); ++i)
        if (images_[i] != static_cast<int>(i)) return false;
    return true;
}

unsigned long Perm::order() const {
    std::vector<bool> seen(degree(), false);
    unsigned long ord = 1;
    for (std::size_t i = 0; i < degree(); ++i) {
        if (seen[i]) continue;
        unsigned long len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(images_[j]);
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

Perm perm_of_word(const Word& w, const std::vector<Perm>& images) {
    if (images.empty()) throw std::invalid_argument("perm_of_word: no generator images");
    Perm acc = Perm::identity(images[0].degree());
    for (Letter l : w.letters()) {
        const Perm& g = images[static_cast<std::size_t>(std::abs(l)) - 1];
        acc = acc.then(l > 0 ? g : g.inverse());
    }
    return acc;
}

std::optional<RejectWitness> check_homomorphism(const Presentation& p,
                                                const std::vector<Perm>& images) {
    if (images.size() != p.generator_count())
        throw std::invalid_argument("check_homomorphism: arity mismatch");
    for (const Perm& g : images)
        if (g.degree() == 0 || g.degree() != images[0].degree())
            throw std::invalid_argument("check_homomorphism: degree mismatch");
    for (std::size_t i = 0; i < p.relators().size(); ++i) {
        if (images.empty()) break;  // no generators: relators were all dropped
        const Perm im = perm_of_word(p.relators()[i], images);
        for (std::size_t pt = 0; pt < im.degree(); ++pt)
            if (im.apply(static_cast<int>(pt)) != static_cast<int>(pt))
                return RejectWitness{i, static_cast<int>(pt)};
    }
    return std::nullopt;
}

std::optional<std::vector<Perm>> quotient_group_elements(const std::vector<Perm>& images,
                                                         std::size_t max_elements) {
    if (images.empty()) return std::vector<Perm>{Perm::identity(1)};
    for (const Perm& g : images)
        if (g.degree() != images[0].degree())
            throw std::invalid_argument("quotient_group_elements: degree mismatch");

    std::vector<Perm> elems{Perm::identity(images[0].degree())};
    std::map<std::vector<int>, int> index{{elems[0].images(), 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
        for (const Perm& g : images) {
            Perm f = elems[head].then(g);
            if (index.emplace(f.images(), static_cast<int>(elems.size())).second) {
                if (elems.size() >= max_elements) return std::nullopt;
                elems.push_back(std::move(f));
            }
        }
    }
    return elems;
}

std::optional<unsigned long> quotient_group_order(const std::vector<Perm>& images,
                                                  std::size_t max_elements) {
    const auto elems = quotient_group_elements(images, max_elements);
    if (!elems) return std::nullopt;
    return static_cast<unsigned long>(elems->size());
}

// ---------------------------------------------------------------------------
// CosetTable

CosetTable::CosetTable(std::size_t coset_count, std::size_t generator_count)
    : cosets_(coset_count),
      gens_(generator_count),
      tab_(coset_count * 2 * generator_count, -1) {}

std::size_t CosetTable::column(Letter l) const {
    const std::size_t g = static_cast<std::size_t>(l > 0 ? l : -l);
    if (g == 0 || g > gens_) throw std::out_of_range("CosetTable: letter out of range");
    return l > 0 ? 2 * (g - 1) : 2 * (g - 1) + 1;
}

int& CosetTable::entry(int coset, Letter l) {
    return tab_.at(static_cast<std::size_t>(coset) * 2 * gens_ + column(l));
}

int CosetTable::entry(int coset, Letter l) const {
    return tab_.at(static_cast<std::size_t>(coset) * 2 * gens_ + column(l));
}

int CosetTable::trace(int coset, const Word& w) const {
    int c = coset;
    for (Letter l : w.letters()) {
        c = entry(c, l);
        if (c < 0) return -1;
    }
    return c;
}

std::optional<std::string> CosetTable::validate(const Presentation& p,
                                                const std::vector<Word>& subgroup_gens) const {
    std::ostringstream os;
    if (p.generator_count() != gens_) return "generator count mismatch";
    for (std::size_t c = 0; c < cosets_; ++c)
        for (std::size_t col = 0; col < 2 * gens_; ++col) {
            const int d = tab_[c * 2 * gens_ + col];
            if (d < 0 || d >= static_cast<int>(cosets_)) {
                os << "undefined or out-of-range entry at coset " << c;
                return os.str();
            }
        }
    for (std::size_t g = 1; g <= gens_; ++g) {
        std::vector<bool> hit(cosets_, false);
        for (std::size_t c = 0; c < cosets_; ++c) {
            const int d = entry(static_cast<int>(c), static_cast<Letter>(g));
            if (hit[static_cast<std::size_t>(d)]) {
                os << "column for generator " << g << " is not a permutation";
                return os.str();
            }
            hit[static_cast<std::size_t>(d)] = true;
            if (entry(d, -static_cast<Letter>(g)) != static_cast<int>(c)) {
                os << "inverse action inconsistent at coset " << c << ", generator " << g;
                return os.str();
            }
        }
    }
    for (std::size_t r = 0; r < p.relators().size(); ++r)
        for (std::size_t c = 0; c < cosets_; ++c)
            if (trace(static_cast<int>(c), p.relators()[r]) != static_cast<int>(c)) {
                os << "relator #" << r << " does not fix coset " << c;
                return os.str();
            }
    for (std::size_t i = 0; i < subgroup_gens.size(); ++i) {
        if (subgroup_gens[i].max_generator() > static_cast<int>(gens_))
            return "subgroup generator uses unknown generator";
        if (trace(0, subgroup_gens[i]) != 0) {
            os << "subgroup generator #" << i << " moves coset 0";
            return os.str();
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// HLT Todd-Coxeter with immediate coincidence handling (union-find with
// minimum-index representatives; deterministic first-free coset numbering).

namespace {

class Enumerator {
  public:
    Enumerator(std::size_t gens, std::size_t max_cosets)
        : ncols_(2 * gens), max_cosets_(max_cosets) {
        tab_.assign(ncols_, -1);
        rep_.push_back(0);
    }

    static std::size_t col_of(Letter l) {
        return l > 0 ? 2 * static_cast<std::size_t>(l - 1)
                     : 2 * static_cast<std::size_t>(-l - 1) + 1;
    }
    static std::size_t inv_col(std::size_t col) { return col ^ 1u; }

    int rows() const { return static_cast<int>(rep_.size()); }
    bool overflowed() const { return overflow_; }

    int rep(int c) {
        int r = c;
        while (rep_[static_cast<std::size_t>(r)] != r) r = rep_[static_cast<std::size_t>(r)];
        while (rep_[static_cast<std::size_t>(c)] != r) {
            const int nxt = rep_[static_cast<std::size_t>(c)];
            rep_[static_cast<std::size_t>(c)] = r;
            c = nxt;
        }
        return r;
    }

    int& at(int c, std::size_t col) {
        return tab_[static_cast<std::size_t>(c) * ncols_ + col];
    }

    // New coset adjacent to c along col; -1 on overflow.
    int define(int c, std::size_t col) {
        if (rep_.size() >= max_cosets_) {
            overflow_ = true;
            return -1;
        }
        const int n = rows();
        tab_.resize(tab_.size() + ncols_, -1);
        rep_.push_back(n);
        at(c, col) = n;
        at(n, inv_col(col)) = c;
        return n;
    }

    void merge(int a, int b) {
        a = rep(a);
        b = rep(b);
        if (a == b) return;
        if (a > b) std::swap(a, b);
        rep_[static_cast<std::size_t>(b)] = a;
        dead_.push_back(b);
    }

    // Process the coincidence a = b: migrate every edge of each dead coset to
    // its representative, queuing any secondary coincidences discovered.
    void coincidence(int a, int b) {
        merge(a, b);
        while (!dead_.empty()) {
            const int e = dead_.front();
            dead_.pop_front();
            for (std::size_t x = 0; x < ncols_; ++x) {
                const int f = at(e, x);
                if (f == -1) continue;
                at(e, x) = -1;
                if (at(f, inv_col(x)) == e) at(f, inv_col(x)) = -1;
                const int e1 = rep(e);
                const int f1 = rep(f);
                if (at(e1, x) != -1) {
                    merge(f1, at(e1, x));
                } else if (at(f1, inv_col(x)) != -1) {
                    merge(e1, at(f1, inv_col(x)));
                } else {
                    at(e1, x) = f1;
                    at(f1, inv_col(x)) = e1;
                }
            }
        }
    }

    // Scan word w from coset c, defining cosets as needed so the scan
    // completes; false on overflow.
    bool scan_and_fill(int c, const std::vector<Letter>& w) {
        if (w.empty()) return true;
        long i = 0;
        long j = static_cast<long>(w.size()) - 1;
        int f = c;
        int b = c;
        for (;;) {
            while (i <= j && at(f, col_of(w[static_cast<std::size_t>(i)])) != -1) {
                f = at(f, col_of(w[static_cast<std::size_t>(i)]));
                ++i;
            }
            if (i > j) {
                if (f != b) coincidence(f, b);
                return true;
            }
            while (j >= i && at(b, inv_col(col_of(w[static_cast<std::size_t>(j)]))) != -1) {
                b = at(b, inv_col(col_of(w[static_cast<std::size_t>(j)])));
                --j;
            }
            if (j < i) {
                coincidence(f, b);
                return true;
            }
            if (j == i) {  // deduction closes the scan
                at(f, col_of(w[static_cast<std::size_t>(i)])) = b;
                at(b, inv_col(col_of(w[static_cast<std::size_t>(i)]))) = f;
                return true;
            }
            if (define(f, col_of(w[static_cast<std::size_t>(i)])) < 0) return false;
        }
    }

    std::size_t ncols() const { return ncols_; }

  private:
    std::size_t ncols_;
    std::size_t max_cosets_;
    std::vector<int> tab_;
    std::vector<int> rep_;
    std::deque<int> dead_;
    bool overflow_ = false;
};

}  // namespace

std::optional<CosetTable> todd_coxeter(const Presentation& p,
                                       const std::vector<Word>& subgroup_gens,
                                       std::size_t max_cosets) {
    for (const Word& w : subgroup_gens)
        if (w.max_generator() > static_cast<int>(p.generator_count()))
            throw std::invalid_argument("todd_coxeter: subgroup word uses unknown generator");
    if (p.generator_count() == 0) return CosetTable(1, 0);
    if (max_cosets == 0) return std::nullopt;

    Enumerator en(p.generator_count(), max_cosets);
    for (const Word& w : subgroup_gens)
        if (!en.scan_and_fill(0, w.letters())) return std::nullopt;

    for (int c = 0; c < en.rows(); ++c) {
        if (en.rep(c) != c) continue;
        for (const Word& r : p.relators()) {
            if (!en.scan_and_fill(c, r.letters())) return std::nullopt;
            if (en.rep(c) != c) break;  // c got merged away mid-scan
        }
        if (en.rep(c) != c) continue;
        for (std::size_t col = 0; col < en.ncols(); ++col)
            if (en.at(c, col) == -1 && en.define(c, col) < 0) return std::nullopt;
    }

    std::vector<int> idx(static_cast<std::size_t>(en.rows()), -1);
    int live = 0;
    for (int c = 0; c < en.rows(); ++c)
        if (en.rep(c) == c) idx[static_cast<std::size_t>(c)] = live++;

    CosetTable t(static_cast<std::size_t>(live), p.generator_count());
    for (int c = 0; c < en.rows(); ++c) {
        if (en.rep(c) != c) continue;
        for (std::size_t g = 1; g <= p.generator_count(); ++g) {
            for (const Letter l : {static_cast<Letter>(g), static_cast<Letter>(-static_cast<long>(g))}) {
                const int d = en.at(c, Enumerator::col_of(l));
                if (d < 0) throw std::logic_error("todd_coxeter: incomplete table after closure");
                t.entry(idx[static_cast<std::size_t>(c)], l) = idx[static_cast<std::size_t>(en.rep(d))];
            }
        }
    }
    return t;
}

std::optional<CosetTable> coset_table_from_quotient(const FiniteQuotient& q,
                                                    std::size_t max_elements) {
    if (q.images.size() != q.presentation.generator_count())
        throw std::invalid_argument("coset_table_from_quotient: arity mismatch");
    if (q.images.empty()) return CosetTable(1, 0);

    const auto elems_opt = quotient_group_elements(q.images, max_elements);
    if (!elems_opt) return std::nullopt;
    const std::vector<Perm>& elems = *elems_opt;

    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i)
        index.emplace(elems[i].images(), static_cast<int>(i));

    std::vector<Perm> inverses;
    for (const Perm& g : q.images) inverses.push_back(g.inverse());

    CosetTable t(elems.size(), q.images.size());
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t g = 0; g < q.images.size(); ++g) {
            t.entry(static_cast<int>(i), static_cast<Letter>(g + 1)) =
                index.at(elems[i].then(q.images[g]).images());
            t.entry(static_cast<int>(i), -static_cast<Letter>(g + 1)) =
                index.at(elems[i].then(inverses[g]).images());
        }
    return t;
}

// ---------------------------------------------------------------------------
// Reidemeister-Schreier

namespace {

SchreierResult rs_impl(const Presentation& p, const CosetTable& t, bool parallel) {
    const int n = static_cast<int>(t.coset_count());
    const int G = static_cast<int>(t.generator_count());
    if (n == 0) throw std::invalid_argument("reidemeister_schreier: empty table");

    // BFS spanning tree of the coset graph, columns in generator order, both
    // directions; tree[c*G + g] marks the positive edge (c, g+1) as a tree edge.
    std::vector<char> visited(static_cast<std::size_t>(n), 0);
    std::vector<char> tree(static_cast<std::size_t>(n) * static_cast<std::size_t>(G), 0);
    visited[0] = 1;
    std::deque<int> queue{0};
    int reached = 1;
    while (!queue.empty()) {
        const int c = queue.front();
        queue.pop_front();
        for (int g = 1; g <= G; ++g) {
            for (const Letter l : {static_cast<Letter>(g), static_cast<Letter>(-g)}) {
                const int d = t.act(c, l);
                if (visited[static_cast<std::size_t>(d)]) continue;
                visited[static_cast<std::size_t>(d)] = 1;
                ++reached;
                const int from = l > 0 ? c : d;
                tree[static_cast<std::size_t>(from) * G + static_cast<std::size_t>(g - 1)] = 1;
                queue.push_back(d);
            }
        }
    }
    if (reached != n) throw std::invalid_argument("reidemeister_schreier: table not transitive");

    // Schreier generators: one per non-tree positive edge, numbered row-major.
    std::vector<int> sgen(static_cast<std::size_t>(n) * static_cast<std::size_t>(G), -1);
    int count = 0;
    for (int c = 0; c < n; ++c)
        for (int g = 0; g < G; ++g)
            if (!tree[static_cast<std::size_t>(c) * G + static_cast<std::size_t>(g)])
                sgen[static_cast<std::size_t>(c) * G + static_cast<std::size_t>(g)] = count++;

    const auto& rels = p.relators();
    SchreierResult result;
    result.generator_count = static_cast<std::size_t>(count);
    result.relators.resize(static_cast<std::size_t>(n) * rels.size());
    if (rels.empty()) return result;

    auto rewrite = [&](int c, const Word& w) {
        std::vector<Letter> out;
        int cur = c;
        for (Letter l : w.letters()) {
            if (l > 0) {
                const int s = sgen[static_cast<std::size_t>(cur) * G + static_cast<std::size_t>(l - 1)];
                if (s >= 0) out.push_back(static_cast<Letter>(s + 1));
                cur = t.act(cur, l);
            } else {
                const int v = t.act(cur, l);
                const int s = sgen[static_cast<std::size_t>(v) * G + static_cast<std::size_t>(-l - 1)];
                if (s >= 0) out.push_back(static_cast<Letter>(-(s + 1)));
                cur = v;
            }
        }
        return Word(std::move(out));
    };

    parallel_for(
        0, static_cast<std::ptrdiff_t>(result.relators.size()),
        [&](std::ptrdiff_t flat) {
            const int c = static_cast<int>(static_cast<std::size_t>(flat) / rels.size());
            const std::size_t ri = static_cast<std::size_t>(flat) % rels.size();
            result.relators[static_cast<std::size_t>(flat)] = rewrite(c, rels[ri]);
        },
        parallel);
    return result;
}

}  // namespace

Presentation SchreierResult::presentation() const {
    std::vector<std::string> names;
    names.reserve(generator_count);
    for (std::size_t i = 0; i < generator_count; ++i)
        names.push_back("x_" + std::to_string(i));
    return Presentation(std::move(names), relators);
}

SchreierResult reidemeister_schreier(const Presentation& p, const CosetTable& t) {
    return rs_impl(p, t, true);
}

SchreierResult reidemeister_schreier_serial(const Presentation& p, const CosetTable& t) {
    return rs_impl(p, t, false);
}

}  // namespace ksurf::fp
