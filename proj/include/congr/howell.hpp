#pragma once

#include "congr/int_matrix.hpp"
#include "congr/numeric.hpp"

#include <map>
#include <utility>
#include <vector>

namespace congr {

/// Howell normal form of a set of row vectors over Z/q: the canonical
/// generating set of the row span. Two generating sets span the same
/// submodule of (Z/q)^n iff their Howell forms are identical.
class HowellForm {
  public:
    HowellForm(std::size_t cols, Int q) : cols_(cols), q_(std::move(q)) {
        if (q_ < 2) fail(errc::modulus_too_small, "HowellForm: modulus must be >= 2");
    }

    void add_row(std::vector<Int> r) {
        reduce_mod(r);
        insert(std::move(r));
    }

    void add_matrix_rows(const IntMatrix& m) {
        for (std::size_t i = 0; i < m.rows(); ++i) add_row(m.row(i));
    }

    /// Canonical matrix: pivot rows normalized, annihilator-closed, reduced
    /// above pivots, ordered by leading column.
    IntMatrix canonical() {
        finalize();
        IntMatrix out(pivots_.size(), cols_);
        std::size_t i = 0;
        for (const auto& [lead, row] : pivots_) {
            (void)lead;
            for (std::size_t j = 0; j < cols_; ++j) out.at(i, j) = row[j];
            ++i;
        }
        return out;
    }

    /// Number of elements in the span.
    Int span_size() {
        finalize();
        Int n = 1;
        for (const auto& [lead, row] : pivots_) n *= q_ / gcd(row[lead], q_);
        return n;
    }

    /// Membership test for a single vector.
    bool contains(std::vector<Int> v) {
        finalize();
        reduce_mod(v);
        for (const auto& [lead, row] : pivots_) {
            if (v[lead] == 0) continue;
            if (v[lead] % row[lead] != 0) return false;
            Int f = v[lead] / row[lead];
            for (std::size_t j = lead; j < cols_; ++j) v[j] = mod(v[j] - f * row[j]);
        }
        for (const Int& x : v)
            if (x != 0) return false;
        return true;
    }

    bool contains_rows(const IntMatrix& m) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (!contains(m.row(i))) return false;
        return true;
    }

  private:
    Int mod(const Int& x) const {
        Int r = x % q_;
        if (r < 0) r += q_;
        return r;
    }

    void reduce_mod(std::vector<Int>& r) const {
        if (r.size() != cols_) fail(errc::bad_params, "HowellForm: row length mismatch");
        for (Int& x : r) x = mod(x);
    }

    static std::size_t leading(const std::vector<Int>& r) {
        std::size_t j = 0;
        while (j < r.size() && r[j] == 0) ++j;
        return j;
    }

    // Echelon insertion with unimodular (mod q) two-row transforms.
    void insert(std::vector<Int> r) {
        for (;;) {
            std::size_t lead = leading(r);
            if (lead == cols_) return;
            auto it = pivots_.find(lead);
            if (it == pivots_.end()) {
                pivots_.emplace(lead, std::move(r));
                dirty_ = true;
                return;
            }
            std::vector<Int>& p = it->second;
            Int a = p[lead], b = r[lead];
            if (b % a == 0) {
                Int f = b / a;
                for (std::size_t j = lead; j < cols_; ++j) r[j] = mod(r[j] - f * p[j]);
            } else {
                GcdExt e = gcd_ext(a, b);
                std::vector<Int> np(cols_), nr(cols_);
                for (std::size_t j = 0; j < cols_; ++j) {
                    np[j] = mod(e.p * p[j] + e.q * r[j]);
                    nr[j] = mod((a / e.g) * r[j] - (b / e.g) * p[j]);
                }
                p = std::move(np);
                r = std::move(nr);
                dirty_ = true;
            }
        }
    }

    // Unit u (mod q) with u*a == gcd(a, q) mod q. With g = gcd(a, q), any unit
    // congruent to (a/g)^{-1} mod q/g works; one exists in that residue class.
    Int normalizing_unit(const Int& a) const {
        Int g = gcd(a, q_);
        Int qg = q_ / g;
        Int u0 = gcd_ext(a / g, qg).p % qg;
        if (u0 <= 0) u0 += qg;
        for (Int u = u0;; u += qg)
            if (gcd(u, q_) == 1) return u % q_;
    }

    void finalize() {
        if (!dirty_) return;
        // Annihilator closure: (q/gcd) * row re-entered until stable.
        for (;;) {
            auto snapshot = pivots_;
            for (const auto& [lead, row] : snapshot) {
                Int t = q_ / gcd(row[lead], q_);
                if (t == q_) continue;  // annihilator is the zero row
                std::vector<Int> ann(cols_);
                for (std::size_t j = 0; j < cols_; ++j) ann[j] = mod(t * row[j]);
                insert(std::move(ann));
            }
            if (pivots_ == snapshot) break;
        }
        // Pivot normalization and back-reduction.
        for (auto& [lead, row] : pivots_) {
            Int u = normalizing_unit(row[lead]);
            for (std::size_t j = lead; j < cols_; ++j) row[j] = mod(u * row[j]);
        }
        for (auto it = pivots_.begin(); it != pivots_.end(); ++it) {
            for (auto jt = std::next(it); jt != pivots_.end(); ++jt) {
                std::size_t jl = jt->first;
                const Int& d = jt->second[jl];
                Int f = it->second[jl] / d;
                if (f == 0) continue;
                for (std::size_t j = jl; j < cols_; ++j)
                    it->second[j] = mod(it->second[j] - f * jt->second[j]);
            }
        }
        dirty_ = false;
    }

    std::size_t cols_;
    Int q_;
    std::map<std::size_t, std::vector<Int>> pivots_;
    bool dirty_ = false;
};

/// Canonical generating matrix (rows) for the span of `rows` in (Z/q)^cols.
inline IntMatrix howell_form(const IntMatrix& rows, const Int& q) {
    HowellForm h(rows.cols(), q);
    h.add_matrix_rows(rows);
    return h.canonical();
}

/// span(sub) subset-of span(super) over Z/q.
inline bool span_contains(const IntMatrix& super, const IntMatrix& sub, const Int& q) {
    HowellForm h(super.cols(), q);
    h.add_matrix_rows(super);
    return h.contains_rows(sub);
}

inline bool span_equal(const IntMatrix& a, const IntMatrix& b, const Int& q) {
    return howell_form(a, q) == howell_form(b, q);
}

}  // namespace congr
