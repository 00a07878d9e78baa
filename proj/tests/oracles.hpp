#pragma once

// Test-only oracles, deliberately independent of the reduction code they
// check: determinants by cofactor expansion, Smith divisors by the
// minor-gcd characterization d_1*...*d_k = gcd(k x k minors).

#include "congr/int_matrix.hpp"
#include "congr/numeric.hpp"

#include <vector>

namespace oracle {

using congr::Int;
using congr::IntMatrix;

inline Int det_cofactor(const IntMatrix& m) {
    std::size_t n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m.at(0, 0);
    Int det = 0;
    for (std::size_t j = 0; j < n; ++j) {
        if (m.at(0, j) == 0) continue;
        IntMatrix sub(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t cc = 0;
            for (std::size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                sub.at(i - 1, cc++) = m.at(i, c);
            }
        }
        Int term = m.at(0, j) * det_cofactor(sub);
        if (j % 2 == 0)
            det += term;
        else
            det -= term;
    }
    return det;
}

inline void enumerate_subsets(std::size_t n, std::size_t k, std::vector<std::size_t>& cur,
                              std::size_t start, std::vector<std::vector<std::size_t>>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= n; ++i) {
        cur.push_back(i);
        enumerate_subsets(n, k, cur, i + 1, out);
        cur.pop_back();
    }
}

inline Int minor_gcd(const IntMatrix& m, std::size_t k) {
    std::vector<std::vector<std::size_t>> rows, cols;
    std::vector<std::size_t> cur;
    enumerate_subsets(m.rows(), k, cur, 0, rows);
    enumerate_subsets(m.cols(), k, cur, 0, cols);
    Int g = 0;
    for (const auto& rs : rows)
        for (const auto& cs : cols) {
            IntMatrix sub(k, k);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) sub.at(i, j) = m.at(rs[i], cs[j]);
            g = congr::gcd(g, det_cofactor(sub));
        }
    return congr::abs(g);
}

inline std::vector<Int> smith_divisors_by_minors(const IntMatrix& m) {
    std::size_t n = std::min(m.rows(), m.cols());
    std::vector<Int> d(n, Int(0));
    Int prev = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        Int g = minor_gcd(m, k);
        if (g == 0) break;
        d[k - 1] = g / prev;
        prev = g;
    }
    return d;
}

}  // namespace oracle
