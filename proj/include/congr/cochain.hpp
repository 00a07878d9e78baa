#pragma once

#include "congr/abelian.hpp"
#include "congr/howell.hpp"
#include "congr/int_matrix.hpp"
#include "congr/smith.hpp"

#include <cstddef>
#include <vector>

namespace congr {

inline AbelianGroup group_from_divisors(const std::vector<Int>& divisors, std::size_t ambient) {
    AbelianGroup g;
    std::size_t nonzero = 0;
    for (const Int& d : divisors) {
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) g.invariant_factors.push_back(d);
    }
    g.free_rank = static_cast<long>(ambient - nonzero);
    return g;
}

/// Z^rows(a) / (column lattice of a).
inline AbelianGroup cokernel_group(const IntMatrix& a) {
    return group_from_divisors(smith_divisors(a), a.rows());
}

inline IntMatrix hcat(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() && a.cols() != 0 && b.cols() != 0)
        fail(errc::bad_params, "hcat: row mismatch");
    std::size_t r = a.cols() == 0 ? b.rows() : a.rows();
    IntMatrix m(r, a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

/// Generators of {v : A v = 0 mod q}, canonical via the Howell form; the
/// abstract group structure and the solution count come from the Smith
/// transform (columns of V scaled by q/gcd(d_i, q)).
struct KernelModResult {
    IntMatrix generators;  // one generator per row, entries in [0, q)
    AbelianGroup group;
    Int solution_count;
};

inline KernelModResult kernel_mod(const IntMatrix& a, const Int& q) {
    if (q < 2) fail(errc::modulus_too_small, "kernel_mod: q must be >= 2");
    detail::SmithOptions opt;
    opt.want_v = true;
    detail::SmithState st = detail::smith_reduce(a, opt);
    std::size_t c = a.cols();
    std::size_t n = std::min(a.rows(), c);

    std::vector<Int> orders;
    Int count = 1;
    HowellForm howell(c, q);
    for (std::size_t i = 0; i < c; ++i) {
        Int di = i < n ? st.s.at(i, i) : Int(0);
        Int g = di == 0 ? q : gcd(di, q);
        count *= g;
        if (g == 1) continue;
        orders.push_back(g);
        Int scale = q / g;
        std::vector<Int> gen(c);
        for (std::size_t k = 0; k < c; ++k) gen[k] = scale * st.v.at(k, i);
        howell.add_row(std::move(gen));
    }
    KernelModResult out;
    out.generators = howell.canonical();
    out.group = AbelianGroup::from_cyclic_orders(orders);
    out.solution_count = count;
    return out;
}

/// Quotient of column lattices L1/L2 for span(g2) contained in span(g1):
/// express the columns of g2 in a basis of L1 and take the cokernel.
inline AbelianGroup lattice_quotient(const IntMatrix& g1, const IntMatrix& g2) {
    IntMatrix basis = column_space_basis(g1);
    IntMatrix coords = solve_in_column_basis(basis, g2);
    return cokernel_group(coords);
}

enum class CohomologyStrategy {
    Auto,
    /// Restrict d_in to a kernel basis of d_out obtained from the Smith
    /// transform, then take the cokernel.
    KernelRestriction,
    /// Same group by the splitting coker(d_in) = H + Z^{rank d_out}: torsion
    /// from the divisors of d_in, free rank from the two ranks. Avoids
    /// materializing transform matrices on large complexes.
    RankSplit,
};

/// ker(d_out) / im(d_in) for consecutive differentials (d_out * d_in = 0,
/// checked). d_in maps into the middle space (rows = dim), d_out out of it
/// (cols = dim).
inline AbelianGroup cochain_cohomology(const IntMatrix& d_in, const IntMatrix& d_out,
                                       CohomologyStrategy strategy = CohomologyStrategy::Auto) {
    std::size_t mid = d_out.cols();
    if (d_in.rows() != mid && d_in.cols() != 0)
        fail(errc::bad_params, "cochain_cohomology: dimension mismatch");
    if (d_in.cols() != 0 && d_out.rows() != 0 && !(d_out * d_in).is_zero())
        fail(errc::composition_nonzero, "cochain_cohomology: d_out * d_in != 0");

    if (strategy == CohomologyStrategy::Auto)
        strategy = mid > 120 ? CohomologyStrategy::RankSplit
                             : CohomologyStrategy::KernelRestriction;

    if (strategy == CohomologyStrategy::KernelRestriction) {
        IntMatrix din = d_in.cols() == 0 ? IntMatrix(mid, 0) : d_in;
        KernelWithCoords kw = kernel_with_coords(d_out, din);
        return cokernel_group(kw.coords);
    }

    AbelianGroup g;
    std::size_t rank_in = 0;
    if (d_in.cols() != 0) {
        for (const Int& d : smith_divisors(d_in)) {
            if (d == 0) continue;
            ++rank_in;
            if (d > 1) g.invariant_factors.push_back(d);
        }
    }
    std::size_t rank_out = d_out.rows() == 0 ? 0 : rank_of(d_out);
    g.free_rank = static_cast<long>(mid - rank_in - rank_out);
    return g;
}

/// Cohomology of the complex reduced mod q: preimage lattices in Z^mid of
/// ker(d_out mod q) and im(d_in mod q) both contain q Z^mid, so the quotient
/// is a finite lattice quotient.
inline AbelianGroup cochain_cohomology_mod(const IntMatrix& d_in, const IntMatrix& d_out,
                                           const Int& q) {
    if (q < 2) fail(errc::modulus_too_small, "cochain_cohomology_mod: q must be >= 2");
    std::size_t mid = d_out.cols();
    if (d_in.rows() != mid && d_in.cols() != 0)
        fail(errc::bad_params, "cochain_cohomology_mod: dimension mismatch");
    if (d_in.cols() != 0 && d_out.rows() != 0 && !(d_out * d_in).reduced_mod(q).is_zero())
        fail(errc::composition_nonzero, "cochain_cohomology_mod: composite nonzero mod q");

    IntMatrix kernel_gens = kernel_mod(d_out, q).generators.transpose();
    IntMatrix qid = scalar_matrix(mid, q);
    IntMatrix l1 = hcat(kernel_gens, qid);
    IntMatrix l2 = d_in.cols() == 0 ? qid : hcat(d_in, qid);
    return lattice_quotient(l1, l2);
}

}  // namespace congr
