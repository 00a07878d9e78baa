#pragma once

#include "congr/abelian.hpp"
#include "congr/cochain.hpp"
#include "congr/int_matrix.hpp"
#include "congr/sl2.hpp"
#include "congr/smith.hpp"

#include <cstddef>
#include <vector>

namespace congr {

/// Matrix of g acting on M_n, the degree-n homogeneous part of Z[x,y], in the
/// monomial basis x^n, x^(n-1) y, ..., y^n. The action substitutes
/// x -> g11 x + g21 y and y -> g12 x + g22 y (on M_1 this is g itself), which
/// extends the generator rules s1: x -> x - y and s2: y -> x + y to a
/// homomorphism g -> rho(g).
struct RepMatrix {
    long n = 0;
    Int modulus = 0;  // 0 encodes Z
    IntMatrix matrix;
};

inline IntMatrix rep_matrix_raw(const Mat2Z& g, long n) {
    if (n < 0) fail(errc::bad_degree, "rep_matrix: degree must be >= 0");
    std::size_t dim = std::size_t(n) + 1;
    IntMatrix m(dim, dim);
    // image of x^(n-j) y^j = (a x + c y)^(n-j) (b x + d y)^j
    for (std::size_t j = 0; j < dim; ++j) {
        unsigned long px = static_cast<unsigned long>(n) - j, py = j;
        std::vector<Int> fx(px + 1), fy(py + 1);
        for (unsigned long i = 0; i <= px; ++i)
            fx[i] = binomial(px, i) * int_pow(g.a11, px - i) * int_pow(g.a21, i);
        for (unsigned long k = 0; k <= py; ++k)
            fy[k] = binomial(py, k) * int_pow(g.a12, py - k) * int_pow(g.a22, k);
        for (unsigned long i = 0; i <= px; ++i)
            for (unsigned long k = 0; k <= py; ++k) m.at(i + k, j) += fx[i] * fy[k];
    }
    return m;
}

inline RepMatrix rep_matrix(const Mat2Z& g, long n, const Int& modulus = 0) {
    RepMatrix r;
    r.n = n;
    r.modulus = modulus;
    r.matrix = rep_matrix_raw(g, n);
    if (modulus != 0) {
        if (modulus < 2) fail(errc::modulus_too_small, "rep_matrix: modulus must be 0 or >= 2");
        r.matrix = r.matrix.reduced_mod(modulus);
    }
    return r;
}

/// Vertical stack of (rho(g) - I) over the generating set: the common fixed
/// vectors of the generators are exactly its kernel.
inline IntMatrix stacked_action(const std::vector<Mat2Z>& gens, long n) {
    std::size_t dim = std::size_t(n) + 1;
    IntMatrix stack(gens.size() * dim, dim);
    IntMatrix id = IntMatrix::identity(dim);
    for (std::size_t k = 0; k < gens.size(); ++k)
        stack.set_block(k * dim, 0, rep_matrix_raw(gens[k], n) - id);
    return stack;
}

struct InvariantSubmodule {
    AbelianGroup group;
    IntMatrix generators;  // canonical rows in (Z/q)^(n+1)
};

/// (M_n tensor Z/q)^G for G generated by `gens`.
inline InvariantSubmodule invariant_submodule(const std::vector<Mat2Z>& gens, long n,
                                              const Int& q) {
    if (q < 2) fail(errc::modulus_too_small, "invariant_submodule: q must be >= 2");
    KernelModResult k = kernel_mod(stacked_action(gens, n), q);
    return InvariantSubmodule{std::move(k.group), std::move(k.generators)};
}

/// Invariants of M_n over Z; free of rank (n+1) minus the stack rank.
inline AbelianGroup integral_invariants(const std::vector<Mat2Z>& gens, long n) {
    IntMatrix stack = stacked_action(gens, n);
    return AbelianGroup(long(stack.cols() - rank_of(stack)));
}

}  // namespace congr
