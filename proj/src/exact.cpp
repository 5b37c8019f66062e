#include "ksurf/exact.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "ksurf/parallel.hpp"

namespace ksurf::exact {

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows.begin()->size();
    IntMatrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) throw std::invalid_argument("ragged row list");
        std::size_t j = 0;
        for (long v : row) m(i, j++) = v;
        ++i;
    }
    return m;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in product");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                mpz_addmul(c(i, j).get_mpz_t(), a(i, k).get_mpz_t(), b(k, j).get_mpz_t());
        }
    return c;
}

namespace {

// Work below parallelizes only when the remaining block carries enough
// entries to pay for the fork.
constexpr std::size_t kParallelCutoff = 2048;

struct SnfWorkspace {
    IntMatrix a;
    bool parallel;

    std::size_t rows() const { return a.rows(); }
    std::size_t cols() const { return a.cols(); }

    // locate smallest nonzero |entry| in the block [s.., s..); row-major
    // first-occurrence tie-break
    bool find_pivot(std::size_t s, std::size_t& pi, std::size_t& pj) const {
        bool found = false;
        for (std::size_t i = s; i < rows(); ++i)
            for (std::size_t j = s; j < cols(); ++j) {
                const Int& v = a(i, j);
                if (v == 0) continue;
                if (!found || mpz_cmpabs(v.get_mpz_t(), a(pi, pj).get_mpz_t()) < 0) {
                    found = true;
                    pi = i;
                    pj = j;
                }
            }
        return found;
    }

    void swap_rows(std::size_t r1, std::size_t r2, std::size_t from_col) {
        if (r1 == r2) return;
        for (std::size_t j = from_col; j < cols(); ++j) std::swap(a(r1, j), a(r2, j));
    }

    void swap_cols(std::size_t c1, std::size_t c2, std::size_t from_row) {
        if (c1 == c2) return;
        for (std::size_t i = from_row; i < rows(); ++i) std::swap(a(i, c1), a(i, c2));
    }

    // row_i -= q * row_s on columns [s..)
    void row_axpy(std::size_t i, std::size_t s, const Int& q) {
        for (std::size_t j = s; j < cols(); ++j)
            mpz_submul(a(i, j).get_mpz_t(), q.get_mpz_t(), a(s, j).get_mpz_t());
    }

    void col_axpy(std::size_t j, std::size_t s, const Int& q) {
        for (std::size_t i = s; i < rows(); ++i)
            mpz_submul(a(i, j).get_mpz_t(), q.get_mpz_t(), a(i, s).get_mpz_t());
    }

    // One reduction pass of column s against the pivot; returns true if a
    // nonzero remainder survived (a strictly smaller pivot now exists).
    bool clear_column(std::size_t s) {
        const std::size_t n = rows();
        std::vector<Int> quot(n);
        for (std::size_t i = s + 1; i < n; ++i)
            if (a(i, s) != 0) mpz_tdiv_q(quot[i].get_mpz_t(), a(i, s).get_mpz_t(), a(s, s).get_mpz_t());
        bool big = parallel && (n - s) * (cols() - s) >= kParallelCutoff;
        parallel_for(
            static_cast<std::ptrdiff_t>(s + 1), static_cast<std::ptrdiff_t>(n),
            [&](std::ptrdiff_t i) {
                if (quot[i] != 0) row_axpy(static_cast<std::size_t>(i), s, quot[i]);
            },
            big);
        for (std::size_t i = s + 1; i < n; ++i)
            if (a(i, s) != 0) return true;
        return false;
    }

    bool clear_row(std::size_t s) {
        const std::size_t n = cols();
        std::vector<Int> quot(n);
        for (std::size_t j = s + 1; j < n; ++j)
            if (a(s, j) != 0) mpz_tdiv_q(quot[j].get_mpz_t(), a(s, j).get_mpz_t(), a(s, s).get_mpz_t());
        bool big = parallel && (rows() - s) * (n - s) >= kParallelCutoff;
        parallel_for(
            static_cast<std::ptrdiff_t>(s + 1), static_cast<std::ptrdiff_t>(n),
            [&](std::ptrdiff_t j) {
                if (quot[j] != 0) col_axpy(static_cast<std::size_t>(j), s, quot[j]);
            },
            big);
        for (std::size_t j = s + 1; j < n; ++j)
            if (a(s, j) != 0) return true;
        return false;
    }
};

SmithResult snf_impl(IntMatrix m, bool parallel) {
    SnfWorkspace w{std::move(m), parallel};
    const std::size_t nmin = std::min(w.rows(), w.cols());
    std::size_t s = 0;
    while (s < nmin) {
        std::size_t pi = s, pj = s;
        if (!w.find_pivot(s, pi, pj)) break;
        w.swap_rows(s, pi, s);
        w.swap_cols(s, pj, s);
        for (;;) {
            if (w.clear_column(s) || w.clear_row(s)) {
                // a remainder smaller than the pivot appeared; reselect
                std::size_t qi = s, qj = s;
                w.find_pivot(s, qi, qj);
                w.swap_rows(s, qi, s);
                w.swap_cols(s, qj, s);
                continue;
            }
            // row and column are clear; enforce that the pivot divides the
            // remaining block before moving on
            bool fixed = true;
            for (std::size_t i = s + 1; i < w.rows() && fixed; ++i)
                for (std::size_t j = s + 1; j < w.cols(); ++j)
                    if (!mpz_divisible_p(w.a(i, j).get_mpz_t(), w.a(s, s).get_mpz_t())) {
                        // fold row i into row s; the next pass shrinks the pivot
                        for (std::size_t jj = s; jj < w.cols(); ++jj)
                            w.a(s, jj) += w.a(i, jj);
                        fixed = false;
                        break;
                    }
            if (fixed) break;
        }
        if (w.a(s, s) < 0) w.a(s, s) = -w.a(s, s);
        ++s;
    }
    SmithResult res;
    res.rank = s;
    res.invariant_factors.reserve(s);
    for (std::size_t i = 0; i < s; ++i) res.invariant_factors.push_back(w.a(i, i));
    return res;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) { return snf_impl(m, true); }
SmithResult smith_normal_form_serial(const IntMatrix& m) { return snf_impl(m, false); }

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t piv = k;
            while (piv < n && a(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

SymmetricForm::SymmetricForm(IntMatrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) throw std::invalid_argument("symmetric form must be square");
    for (std::size_t i = 0; i < m_.rows(); ++i)
        for (std::size_t j = i + 1; j < m_.cols(); ++j)
            if (m_(i, j) != m_(j, i)) throw std::invalid_argument("matrix is not symmetric");
}

SymmetricForm SymmetricForm::diagonal(std::initializer_list<long> entries) {
    IntMatrix m(entries.size(), entries.size());
    std::size_t i = 0;
    for (long v : entries) {
        m(i, i) = v;
        ++i;
    }
    return SymmetricForm(std::move(m));
}

Signature signature_of(const SymmetricForm& q) {
    const std::size_t n = q.dimension();
    std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(q(i, j));

    auto swap_basis = [&](std::size_t i, std::size_t j) {
        a[i].swap(a[j]);
        for (std::size_t r = 0; r < n; ++r) std::swap(a[r][i], a[r][j]);
    };
    // e_i += c * e_j as a congruence: row then column update keeps symmetry
    auto add_basis = [&](std::size_t i, std::size_t j, const Rat& c) {
        for (std::size_t r = 0; r < n; ++r) a[i][r] += c * a[j][r];
        for (std::size_t r = 0; r < n; ++r) a[r][i] += c * a[r][j];
    };

    Signature sig;
    for (std::size_t p = 0; p < n; ++p) {
        if (a[p][p] == 0) {
            std::size_t d = p;
            while (d < n && a[d][d] == 0) ++d;
            if (d < n) {
                swap_basis(p, d);
            } else {
                std::size_t o = p + 1;
                while (o < n && a[p][o] == 0) ++o;
                if (o == n) {
                    // row p vanishes against the rest: a zero direction
                    ++sig.b_zero;
                    continue;
                }
                add_basis(p, o, Rat(1));  // diagonal becomes 2*a[p][o] != 0
            }
        }
        const Rat pivot = a[p][p];
        if (pivot > 0)
            ++sig.b_plus;
        else
            ++sig.b_minus;
        for (std::size_t i = p + 1; i < n; ++i) {
            if (a[i][p] == 0) continue;
            add_basis(i, p, -a[i][p] / pivot);
        }
    }
    return sig;
}

SymmetricForm direct_sum(const SymmetricForm& a, const SymmetricForm& b) {
    const std::size_t n = a.dimension(), m = b.dimension();
    IntMatrix s(n + m, n + m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) s(i, j) = a(i, j);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) s(n + i, n + j) = b(i, j);
    return SymmetricForm(std::move(s));
}

Parity parity(const SymmetricForm& q) {
    for (std::size_t i = 0; i < q.dimension(); ++i)
        if (mpz_odd_p(q(i, i).get_mpz_t())) return Parity::Odd;
    return Parity::Even;
}

std::string to_string(const SmithResult& r) {
    std::ostringstream os;
    os << "rank=" << r.rank << " invariant_factors=[";
    for (std::size_t i = 0; i < r.invariant_factors.size(); ++i) {
        if (i) os << ",";
        os << r.invariant_factors[i];
    }
    os << "]";
    return os.str();
}

std::string to_string(const Signature& s) {
    std::ostringstream os;
    os << "(" << s.b_plus << "," << s.b_zero << "," << s.b_minus << ")";
    return os.str();
}

}  // namespace ksurf::exact
