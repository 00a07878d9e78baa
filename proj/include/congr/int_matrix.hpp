#pragma once

#include "congr/numeric.hpp"

#include <cstddef>
#include <initializer_list>
#include <tuple>
#include <utility>
#include <vector>

namespace congr {

/// Dense matrix over arbitrary-precision integers, row-major.
/// All operations are exact; there is no floating point anywhere.
class IntMatrix {
  public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static IntMatrix identity(std::size_t n) {
        IntMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    static IntMatrix zero(std::size_t rows, std::size_t cols) { return IntMatrix(rows, cols); }

    static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r == 0 ? 0 : rows.begin()->size();
        IntMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) fail(errc::bad_params, "from_rows: ragged rows");
            std::size_t j = 0;
            for (long v : row) m.at(i, j++) = v;
            ++i;
        }
        return m;
    }

    // Sparse construction path; unspecified entries are zero.
    struct Triplet {
        std::size_t row, col;
        Int value;
    };
    static IntMatrix from_triplets(std::size_t rows, std::size_t cols,
                                   const std::vector<Triplet>& ts) {
        IntMatrix m(rows, cols);
        for (const auto& t : ts) m.at(t.row, t.col) += t.value;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const IntMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const Int& v : a_)
            if (v != 0) return false;
        return true;
    }

    IntMatrix transpose() const {
        IntMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    IntMatrix operator*(const IntMatrix& b) const {
        if (cols_ != b.rows_) fail(errc::bad_params, "matrix product: shape mismatch");
        IntMatrix c(rows_, b.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Int& aik = at(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Int& bkj = b.at(k, j);
                    if (bkj != 0) c.at(i, j) += aik * bkj;
                }
            }
        return c;
    }

    IntMatrix operator+(const IntMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) fail(errc::bad_params, "matrix sum: shape");
        IntMatrix c(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] + b.a_[i];
        return c;
    }

    IntMatrix operator-(const IntMatrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_) fail(errc::bad_params, "matrix diff: shape");
        IntMatrix c(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = a_[i] - b.a_[i];
        return c;
    }

    IntMatrix operator-() const {
        IntMatrix c(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) c.a_[i] = -a_[i];
        return c;
    }

    // Entries reduced to [0, q).
    IntMatrix reduced_mod(const Int& q) const {
        IntMatrix c(rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) {
            Int r = a_[i] % q;
            if (r < 0) r += q;
            c.a_[i] = r;
        }
        return c;
    }

    /// Stack `top` above `bottom` (matching column counts).
    static IntMatrix vstack(const IntMatrix& top, const IntMatrix& bottom) {
        if (top.cols_ != bottom.cols_ && top.rows_ != 0 && bottom.rows_ != 0)
            fail(errc::bad_params, "vstack: column mismatch");
        std::size_t c = top.rows_ == 0 ? bottom.cols_ : top.cols_;
        IntMatrix m(top.rows_ + bottom.rows_, c);
        for (std::size_t i = 0; i < top.rows_; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = top.at(i, j);
        for (std::size_t i = 0; i < bottom.rows_; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(top.rows_ + i, j) = bottom.at(i, j);
        return m;
    }

    static IntMatrix vstack(const std::vector<IntMatrix>& parts, std::size_t cols) {
        std::size_t r = 0;
        for (const auto& p : parts) r += p.rows();
        IntMatrix m(r, cols);
        std::size_t off = 0;
        for (const auto& p : parts) {
            if (p.rows() != 0 && p.cols() != cols) fail(errc::bad_params, "vstack: column mismatch");
            for (std::size_t i = 0; i < p.rows(); ++i)
                for (std::size_t j = 0; j < cols; ++j) m.at(off + i, j) = p.at(i, j);
            off += p.rows();
        }
        return m;
    }

    /// Copy `block` into this matrix with top-left corner at (i0, j0).
    void set_block(std::size_t i0, std::size_t j0, const IntMatrix& block) {
        for (std::size_t i = 0; i < block.rows(); ++i)
            for (std::size_t j = 0; j < block.cols(); ++j) at(i0 + i, j0 + j) = block.at(i, j);
    }

    void add_block(std::size_t i0, std::size_t j0, const IntMatrix& block, const Int& scale) {
        for (std::size_t i = 0; i < block.rows(); ++i)
            for (std::size_t j = 0; j < block.cols(); ++j)
                at(i0 + i, j0 + j) += scale * block.at(i, j);
    }

    IntMatrix block(std::size_t i0, std::size_t j0, std::size_t r, std::size_t c) const {
        IntMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) m.at(i, j) = at(i0 + i, j0 + j);
        return m;
    }

    std::vector<Int> column(std::size_t j) const {
        std::vector<Int> v(rows_);
        for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
        return v;
    }

    std::vector<Int> row(std::size_t i) const {
        std::vector<Int> v(cols_);
        for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
        return v;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Int> a_;
};

inline IntMatrix scalar_matrix(std::size_t n, const Int& c) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = c;
    return m;
}

}  // namespace congr
