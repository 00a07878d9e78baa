#pragma once

#include "congr/int_matrix.hpp"
#include "congr/numeric.hpp"

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

namespace congr {

/// U*A*V = S with U, V unimodular and S diagonal, divisors d1 | d2 | ...
/// Zero divisors sit at the tail. Divisors are reported non-negative so
/// downstream group comparisons are canonical.
struct SmithForm {
    IntMatrix u, s, v;
    std::vector<Int> divisors;
};

namespace detail {

struct SmithOptions {
    bool want_u = false;
    bool want_v = false;
    bool want_vinv = false;
};

struct SmithState {
    IntMatrix s, u, v, vinv;
    SmithOptions opt;
    std::vector<long> row_nnz, col_nnz;

    explicit SmithState(IntMatrix a, SmithOptions o) : s(std::move(a)), opt(o) {
        if (opt.want_u) u = IntMatrix::identity(s.rows());
        if (opt.want_v) v = IntMatrix::identity(s.cols());
        if (opt.want_vinv) vinv = IntMatrix::identity(s.cols());
        row_nnz.assign(s.rows(), 0);
        col_nnz.assign(s.cols(), 0);
        for (std::size_t i = 0; i < s.rows(); ++i)
            for (std::size_t j = 0; j < s.cols(); ++j)
                if (s.at(i, j) != 0) {
                    ++row_nnz[i];
                    ++col_nnz[j];
                }
    }

    void set_entry(std::size_t i, std::size_t j, Int value) {
        Int& slot = s.at(i, j);
        if (slot != 0 && value == 0) {
            --row_nnz[i];
            --col_nnz[j];
        } else if (slot == 0 && value != 0) {
            ++row_nnz[i];
            ++col_nnz[j];
        }
        slot = std::move(value);
    }

    void row_sub(std::size_t i, std::size_t t, const Int& q) {
        for (std::size_t j = 0; j < s.cols(); ++j)
            if (s.at(t, j) != 0) set_entry(i, j, s.at(i, j) - q * s.at(t, j));
        if (opt.want_u)
            for (std::size_t j = 0; j < u.cols(); ++j)
                if (u.at(t, j) != 0) u.at(i, j) -= q * u.at(t, j);
    }

    void row_swap(std::size_t i, std::size_t t) {
        if (i == t) return;
        for (std::size_t j = 0; j < s.cols(); ++j) std::swap(s.at(i, j), s.at(t, j));
        std::swap(row_nnz[i], row_nnz[t]);
        if (opt.want_u)
            for (std::size_t j = 0; j < u.cols(); ++j) std::swap(u.at(i, j), u.at(t, j));
    }

    void row_negate(std::size_t i) {
        for (std::size_t j = 0; j < s.cols(); ++j) s.at(i, j) = -s.at(i, j);
        if (opt.want_u)
            for (std::size_t j = 0; j < u.cols(); ++j) u.at(i, j) = -u.at(i, j);
    }

    void col_sub(std::size_t j, std::size_t t, const Int& q) {
        for (std::size_t i = 0; i < s.rows(); ++i)
            if (s.at(i, t) != 0) set_entry(i, j, s.at(i, j) - q * s.at(i, t));
        if (opt.want_v)
            for (std::size_t i = 0; i < v.rows(); ++i)
                if (v.at(i, t) != 0) v.at(i, j) -= q * v.at(i, t);
        // V <- V*E with E = I - q*E_{tj}; Vinv <- E^{-1}*Vinv adds q*row_j to row_t.
        if (opt.want_vinv)
            for (std::size_t k = 0; k < vinv.cols(); ++k)
                if (vinv.at(j, k) != 0) vinv.at(t, k) += q * vinv.at(j, k);
    }

    void col_swap(std::size_t j, std::size_t t) {
        if (j == t) return;
        for (std::size_t i = 0; i < s.rows(); ++i) std::swap(s.at(i, j), s.at(i, t));
        std::swap(col_nnz[j], col_nnz[t]);
        if (opt.want_v)
            for (std::size_t i = 0; i < v.rows(); ++i) std::swap(v.at(i, j), v.at(i, t));
        if (opt.want_vinv)
            for (std::size_t k = 0; k < vinv.cols(); ++k) std::swap(vinv.at(j, k), vinv.at(t, k));
    }

    void col_negate(std::size_t j) {
        for (std::size_t i = 0; i < s.rows(); ++i) s.at(i, j) = -s.at(i, j);
        if (opt.want_v)
            for (std::size_t i = 0; i < v.rows(); ++i) v.at(i, j) = -v.at(i, j);
        if (opt.want_vinv)
            for (std::size_t k = 0; k < vinv.cols(); ++k) vinv.at(j, k) = -vinv.at(j, k);
    }

    // Smallest-nonzero-magnitude pivot; ties broken by the Markowitz fill
    // count (row_nnz-1)*(col_nnz-1), then row-major position. Magnitude alone
    // is not enough: a unit pivot sitting in a dense row and dense column
    // squares the entry sizes of the whole trailing block at every step.
    bool find_pivot(std::size_t t, std::size_t& pi, std::size_t& pj) const {
        bool found = false;
        Int best_mag = 0;
        long best_score = 0;
        for (std::size_t i = t; i < s.rows(); ++i) {
            if (row_nnz[i] == 0) continue;
            for (std::size_t j = t; j < s.cols(); ++j) {
                const Int& e = s.at(i, j);
                if (e == 0) continue;
                Int mag = abs(e);
                long score = (row_nnz[i] - 1) * (col_nnz[j] - 1);
                if (!found || mag < best_mag || (mag == best_mag && score < best_score)) {
                    found = true;
                    best_mag = mag;
                    best_score = score;
                    pi = i;
                    pj = j;
                    if (best_mag == 1 && best_score == 0) return true;
                }
            }
        }
        return found;
    }

    static Int round_div(const Int& b, const Int& a) {
        Int q = b / a;
        Int r = b - q * a;
        if (2 * abs(r) > abs(a)) q += ((r < 0) == (a < 0)) ? 1 : -1;
        return q;
    }

    // Clear row t and column t outside the pivot, Euclid-stepping the pivot down
    // whenever a remainder survives (row pass first, then columns).
    void clear_pivot(std::size_t t) {
        for (;;) {
            bool again = false;
            for (std::size_t i = t + 1; i < s.rows(); ++i) {
                if (s.at(i, t) == 0) continue;
                Int q = round_div(s.at(i, t), s.at(t, t));
                if (q != 0) row_sub(i, t, q);
                if (s.at(i, t) != 0) {
                    row_swap(i, t);
                    again = true;
                }
            }
            for (std::size_t j = t + 1; j < s.cols(); ++j) {
                if (s.at(t, j) == 0) continue;
                Int q = round_div(s.at(t, j), s.at(t, t));
                if (q != 0) col_sub(j, t, q);
                if (s.at(t, j) != 0) {
                    col_swap(j, t);
                    again = true;
                }
            }
            if (again) continue;
            bool row_clear = true, col_clear = true;
            for (std::size_t i = t + 1; i < s.rows() && col_clear; ++i)
                if (s.at(i, t) != 0) col_clear = false;
            for (std::size_t j = t + 1; j < s.cols() && row_clear; ++j)
                if (s.at(t, j) != 0) row_clear = false;
            if (row_clear && col_clear) return;
        }
    }

    void diagonalize() {
        std::size_t n = std::min(s.rows(), s.cols());
        for (std::size_t t = 0; t < n; ++t) {
            std::size_t pi = t, pj = t;
            if (!find_pivot(t, pi, pj)) break;
            row_swap(pi, t);
            col_swap(pj, t);
            clear_pivot(t);
            if (s.at(t, t) < 0) row_negate(t);
        }
    }

    // d_i | d_{i+1}; a violation is repaired by folding column j into column i
    // and re-clearing, which turns the 2x2 block into diag(gcd, lcm).
    void fix_divisibility() {
        std::size_t n = std::min(s.rows(), s.cols());
        for (;;) {
            bool ok = true;
            for (std::size_t i = 0; i + 1 < n && ok; ++i) {
                if (s.at(i, i) == 0) break;
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (s.at(j, j) == 0) break;
                    if (s.at(j, j) % s.at(i, i) != 0) {
                        col_sub(i, j, Int(-1));  // col_i += col_j
                        clear_pivot(i);
                        if (s.at(i, i) < 0) row_negate(i);
                        if (s.at(j, j) < 0) row_negate(j);
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) return;
        }
    }

    std::vector<Int> divisors() const {
        std::size_t n = std::min(s.rows(), s.cols());
        std::vector<Int> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = s.at(i, i);
        return d;
    }
};

inline SmithState smith_reduce(IntMatrix a, SmithOptions opt) {
    SmithState st(std::move(a), opt);
    st.diagonalize();
    st.fix_divisibility();
    return st;
}

/// Sparse integer row-echelon accumulator. Rows are fed one at a time and
/// reduced against the current pivot set with unimodular two-row transforms,
/// so rank and Smith divisors of the accumulated matrix are preserved.
class RowEchelon {
  public:
    using SparseRow = std::vector<std::pair<std::size_t, Int>>;  // sorted by column

    static SparseRow to_sparse(const IntMatrix& m, std::size_t i) {
        SparseRow r;
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (m.at(i, j) != 0) r.emplace_back(j, m.at(i, j));
        return r;
    }

    // Nearest-integer quotient keeps remainders at most half the pivot, which
    // is what holds coefficient growth down on long elimination chains.
    static Int round_div(const Int& b, const Int& a) {
        Int q = b / a;
        Int r = b - q * a;
        if (2 * abs(r) > abs(a)) q += ((r < 0) == (a < 0)) ? 1 : -1;
        return q;
    }

    void add_row(SparseRow r) {
        while (!r.empty()) {
            std::size_t lead = r.front().first;
            auto it = pivots_.find(lead);
            if (it == pivots_.end()) {
                if (r.front().second < 0) negate(r);
                pivots_.emplace(lead, std::move(r));
                return;
            }
            SparseRow& p = it->second;
            Int q = round_div(r.front().second, p.front().second);
            if (q != 0) r = combine(1, r, -q, p);
            if (r.empty()) return;
            if (r.front().first == lead) {
                // remainder survives: the smaller value becomes the pivot
                if (r.front().second < 0) negate(r);
                std::swap(p, r);
            }
        }
    }

    void add_matrix(const IntMatrix& m) {
        for (std::size_t i = 0; i < m.rows(); ++i) add_row(to_sparse(m, i));
    }

    std::size_t rank() const { return pivots_.size(); }

    /// Pivot rows as a dense rank x cols matrix (row order by leading column).
    IntMatrix compact(std::size_t cols) const {
        IntMatrix m(pivots_.size(), cols);
        std::size_t i = 0;
        for (const auto& [lead, row] : pivots_) {
            (void)lead;
            for (const auto& [j, val] : row) m.at(i, j) = val;
            ++i;
        }
        return m;
    }

    const std::map<std::size_t, SparseRow>& pivot_rows() const { return pivots_; }

  private:
    static void negate(SparseRow& r) {
        for (auto& [j, v] : r) v = -v;
    }

    static SparseRow combine(const Int& ca, const SparseRow& a, const Int& cb,
                             const SparseRow& b) {
        SparseRow out;
        out.reserve(a.size() + b.size());
        std::size_t i = 0, j = 0;
        while (i < a.size() || j < b.size()) {
            if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
                Int v = ca * a[i].second;
                if (v != 0) out.emplace_back(a[i].first, std::move(v));
                ++i;
            } else if (i == a.size() || b[j].first < a[i].first) {
                Int v = cb * b[j].second;
                if (v != 0) out.emplace_back(b[j].first, std::move(v));
                ++j;
            } else {
                Int v = ca * a[i].second + cb * b[j].second;
                if (v != 0) out.emplace_back(a[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        return out;
    }

    std::map<std::size_t, SparseRow> pivots_;
};

}  // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& a) {
    detail::SmithOptions opt;
    opt.want_u = opt.want_v = true;
    detail::SmithState st = detail::smith_reduce(a, opt);
    SmithForm out{std::move(st.u), std::move(st.s), std::move(st.v), {}};
    std::size_t n = std::min(a.rows(), a.cols());
    out.divisors.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.divisors[i] = out.s.at(i, i);
#ifdef CONGR_EXPENSIVE_CHECKS
    if (out.u * a * out.v != out.s) fail(errc::mismatch, "smith_normal_form: U*A*V != S");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Int& d0 = out.divisors[i];
        const Int& d1 = out.divisors[i + 1];
        if (d1 != 0 && (d0 == 0 || d1 % d0 != 0))
            fail(errc::mismatch, "smith_normal_form: divisor chain broken");
    }
#endif
    return out;
}

/// Rank over Z by smallest-pivot diagonalization without transforms. The
/// pivot strategy is what keeps coefficient growth tame on the stacked
/// group-action matrices; echelon schemes without it blow up badly there.
inline std::size_t rank_of(const IntMatrix& a) {
    detail::SmithState st(a, {});
    st.diagonalize();
    std::size_t n = std::min(a.rows(), a.cols());
    std::size_t rank = 0;
    while (rank < n && st.s.at(rank, rank) != 0) ++rank;
    return rank;
}

/// Smith divisors without transform matrices.
inline std::vector<Int> smith_divisors(const IntMatrix& a) {
    detail::SmithState st = detail::smith_reduce(a, {});
    return st.divisors();
}

/// Basis of {x : A*x = 0} as columns, from the trailing columns of V.
inline IntMatrix kernel_basis(const IntMatrix& a) {
    detail::SmithOptions opt;
    opt.want_v = true;
    detail::SmithState st = detail::smith_reduce(a, opt);
    std::size_t n = std::min(a.rows(), a.cols());
    std::size_t rank = 0;
    while (rank < n && st.s.at(rank, rank) != 0) ++rank;
    return st.v.block(0, rank, a.cols(), a.cols() - rank);
}

/// Kernel basis of `a` together with the coordinates of the columns of `b`
/// in that basis. Requires a*b = 0 columnwise (checked).
struct KernelWithCoords {
    IntMatrix basis;   // cols(a) x k
    IntMatrix coords;  // k x cols(b), basis * coords == b
};

inline KernelWithCoords kernel_with_coords(const IntMatrix& a, const IntMatrix& b) {
    detail::SmithOptions opt;
    opt.want_v = opt.want_vinv = true;
    detail::SmithState st = detail::smith_reduce(a, opt);
    std::size_t n = std::min(a.rows(), a.cols());
    std::size_t rank = 0;
    while (rank < n && st.s.at(rank, rank) != 0) ++rank;
    IntMatrix y = st.vinv * b;
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < b.cols(); ++j)
            if (y.at(i, j) != 0)
                fail(errc::composition_nonzero, "kernel_with_coords: columns of b not in ker a");
    KernelWithCoords out;
    out.basis = st.v.block(0, rank, a.cols(), a.cols() - rank);
    out.coords = y.block(rank, 0, a.cols() - rank, b.cols());
    return out;
}

/// Basis of the column lattice of `g` (columns with distinct leading rows).
inline IntMatrix column_space_basis(const IntMatrix& g) {
    detail::RowEchelon ech;
    ech.add_matrix(g.transpose());
    return ech.compact(g.rows()).transpose();
}

/// Solve h*x = b exactly, where h comes from column_space_basis (each column
/// has a distinct leading row). Fails if b is outside the lattice.
inline IntMatrix solve_in_column_basis(const IntMatrix& h, const IntMatrix& b) {
    std::vector<std::size_t> lead(h.cols());
    for (std::size_t j = 0; j < h.cols(); ++j) {
        std::size_t i = 0;
        while (i < h.rows() && h.at(i, j) == 0) ++i;
        lead[j] = i;
    }
    IntMatrix x(h.cols(), b.cols());
    IntMatrix r = b;
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t j = 0; j < h.cols(); ++j) {
            const Int& num = r.at(lead[j], c);
            if (num == 0) continue;
            if (num % h.at(lead[j], j) != 0)
                fail(errc::bad_params, "solve_in_column_basis: not in lattice");
            Int q = num / h.at(lead[j], j);
            for (std::size_t i = 0; i < h.rows(); ++i)
                if (h.at(i, j) != 0) r.at(i, c) -= q * h.at(i, j);
            x.at(j, c) = q;
        }
        for (std::size_t i = 0; i < h.rows(); ++i)
            if (r.at(i, c) != 0) fail(errc::bad_params, "solve_in_column_basis: not in lattice");
    }
    return x;
}

}  // namespace congr
