#pragma once

#include "congr/cochain.hpp"
#include "congr/divided.hpp"
#include "congr/presentation.hpp"
#include "congr/symmpow.hpp"

#include <map>
#include <string>
#include <vector>

namespace congr {

struct CohomologyResult {
    std::map<long, AbelianGroup> groups;  // cohomological degree -> group
    std::string model;
    long m = 0;
    long n = 0;
    Int modulus = 0;

    const AbelianGroup& at(long k) const {
        auto it = groups.find(k);
        if (it == groups.end()) fail(errc::bad_degree, "CohomologyResult: degree not computed");
        return it->second;
    }
};

/// Cochain complex M -> M^gens -> M^relators of a presentation: d0 stacks the
/// (rho(g) - I), d1 is the block matrix of evaluated Fox derivatives. Exact
/// for H^0/H^1 of the presented group whatever the presentation.
struct FoxComplex {
    IntMatrix d0;  // (gens*dim) x dim
    IntMatrix d1;  // (relators*dim) x (gens*dim)
};

inline FoxComplex fox_complex(const GroupPresentation& pres, long n) {
    std::size_t dim = std::size_t(n) + 1;
    std::size_t gens = pres.gen_count();

    std::vector<Mat2Z> values, inverses;
    for (std::size_t i = 0; i < gens; ++i) {
        values.push_back(pres.generator_value(i));
        inverses.push_back(values.back().inverse());
    }

    FoxComplex c;
    c.d0 = stacked_action(values, n);
    c.d1 = IntMatrix(pres.relators.size() * dim, gens * dim);
    for (std::size_t r = 0; r < pres.relators.size(); ++r) {
        Mat2Z prefix;
        for (GenRef g : pres.relators[r]) {
            if (g.sign > 0) {
                c.d1.add_block(r * dim, g.index * dim, rep_matrix_raw(prefix, n), 1);
                prefix = prefix * values[g.index];
            } else {
                prefix = prefix * inverses[g.index];
                c.d1.add_block(r * dim, g.index * dim, rep_matrix_raw(prefix, n), -1);
            }
        }
    }
    return c;
}

/// H^0 and H^1 of the presented group acting on M_n (mod q when modulus != 0).
/// Degree <= 1 cohomology is presentation-invariant, so the redundant Schreier
/// generating sets are fine here.
inline CohomologyResult presentation_cohomology(
    const GroupPresentation& pres, long n, const Int& modulus = 0,
    CohomologyStrategy strategy = CohomologyStrategy::Auto) {
    std::vector<Mat2Z> values;
    for (std::size_t i = 0; i < pres.gen_count(); ++i) values.push_back(pres.generator_value(i));

    FoxComplex c = fox_complex(pres, n);
    CohomologyResult out;
    out.model = pres.label;
    out.n = n;
    out.modulus = modulus;
    if (modulus == 0) {
        out.groups[0] = integral_invariants(values, n);
        out.groups[1] = cochain_cohomology(c.d0, c.d1, strategy);
    } else {
        out.groups[0] = invariant_submodule(values, n, modulus).group;
        out.groups[1] = cochain_cohomology_mod(c.d0, c.d1, modulus);
    }
    return out;
}

namespace detail {

// Total complex of the Gamma(2) = F2 x Z2 product resolution: the periodic
// Z2 direction (alternating w2 -/+ I) times the two-step F2 direction.
struct Gamma2Complex {
    std::size_t dim;
    IntMatrix w;   // rho(w2) on M_n
    IntMatrix dv;  // stacked (rho(s1^2) - I, rho(s2^2) - I)

    explicit Gamma2Complex(long n) {
        dim = std::size_t(n) + 1;
        w = rep_matrix_raw(w2(), n);
        dv = stacked_action({eval_word(Word::s1().pow(2)), eval_word(Word::s2().pow(2))}, n);
    }

    IntMatrix horizontal(long i) const {
        IntMatrix h = w;
        IntMatrix id = IntMatrix::identity(dim);
        return i % 2 == 0 ? h - id : h + id;
    }

    std::size_t total_dim(long k) const { return k == 0 ? dim : 3 * dim; }

    // D^k : T^k -> T^(k+1), T^k = C^(k,0) + C^(k-1,1)
    IntMatrix differential(long k) const {
        IntMatrix d(3 * dim, total_dim(k));
        IntMatrix h = horizontal(k);
        d.set_block(0, 0, h);
        d.add_block(dim, 0, dv, k % 2 == 0 ? 1 : -1);
        if (k >= 1) {
            IntMatrix hprev = horizontal(k - 1);
            d.set_block(dim, dim, hprev);
            d.set_block(2 * dim, 2 * dim, hprev);
        }
        return d;
    }
};

inline AbelianGroup tensor_z2(const AbelianGroup& g) { return g.tensor_mod(2); }

}  // namespace detail

/// Closed forms of H^k(Gamma(2); M_n) from the product decomposition.
inline std::map<long, AbelianGroup> gamma2_closed_forms(long n, long max_k) {
    if (max_k < 0) fail(errc::bad_degree, "gamma2_closed_forms: max_k must be >= 0");
    std::size_t dim = std::size_t(n) + 1;
    ProductModel model = gamma2_model();
    std::vector<Mat2Z> f2 = {model.base.generator_value(0), model.base.generator_value(1)};
    AbelianGroup h1_f2 = cokernel_group(stacked_action(f2, n));
    AbelianGroup mn_mod2(0, std::vector<Int>(dim, Int(2)));
    std::map<long, AbelianGroup> closed;
    for (long k = 0; k <= max_k; ++k) {
        if (n % 2 == 0) {
            if (k == 0)
                closed[k] = n == 0 ? AbelianGroup(1) : AbelianGroup();
            else if (k == 1)
                closed[k] = h1_f2;
            else if (k % 2 == 0)
                closed[k] = mn_mod2;
            else
                closed[k] = detail::tensor_z2(h1_f2);
        } else {
            if (k == 0)
                closed[k] = AbelianGroup();
            else if (k % 2 == 1)
                closed[k] = mn_mod2;
            else
                closed[k] = detail::tensor_z2(h1_f2);
        }
    }
    return closed;
}

/// H^k(Gamma(2); M_n) from the total complex of the product resolution;
/// modulus != 0 computes the complex over Z/q instead.
inline std::map<long, AbelianGroup> gamma2_total_complex(long n, long max_k,
                                                         const Int& modulus = 0) {
    if (max_k < 0) fail(errc::bad_degree, "gamma2_total_complex: max_k must be >= 0");
    std::size_t dim = std::size_t(n) + 1;
    detail::Gamma2Complex tot(n);
    std::map<long, AbelianGroup> out;
    IntMatrix d_prev(dim, 0);
    for (long k = 0; k <= max_k; ++k) {
        IntMatrix d_k = tot.differential(k);
        out[k] = modulus == 0 ? cochain_cohomology(d_prev, d_k)
                              : cochain_cohomology_mod(d_prev, d_k, modulus);
        d_prev = std::move(d_k);
    }
    return out;
}

/// H^k(Gamma(2); M_n) for k = 0..max_k, computed both ways; a disagreement
/// raises MISMATCH, since it can only mean a convention bug.
inline CohomologyResult gamma2_cohomology(long n, long max_k) {
    std::map<long, AbelianGroup> closed = gamma2_closed_forms(n, max_k);
    std::map<long, AbelianGroup> total = gamma2_total_complex(n, max_k);
    for (long k = 0; k <= max_k; ++k)
        if (total.at(k) != closed.at(k))
            fail(errc::mismatch, "gamma2_cohomology: resolution disagrees with closed forms at k=" +
                                     std::to_string(k));
    CohomologyResult out;
    out.model = "Gamma(2)";
    out.m = 2;
    out.n = n;
    out.groups = std::move(total);
    return out;
}

/// H^0, H^1 of Gamma(m) on M_n plus the vanishing higher degrees; m = 2 uses
/// the product resolution, m >= 3 the Fox complex of `pres` (which must be
/// the Schreier presentation of Gamma(m)).
inline CohomologyResult gamma_cohomology(const GroupPresentation& pres, long m, long n,
                                         long max_k = 1,
                                         CohomologyStrategy strategy = CohomologyStrategy::Auto) {
    if (m == 2) return gamma2_cohomology(n, max_k);
    CohomologyResult out = presentation_cohomology(pres, n, 0, strategy);
    out.m = m;
    for (long k = 2; k <= max_k; ++k) out.groups[k] = AbelianGroup();  // free group, cd 1
    return out;
}

/// H^0..H^2 of B_Gamma(m) on M_n from the product model: total complex of the
/// base complex tensored with the two-term complex M --(rho(z)-I)--> M.
///
/// For m = 2 the base (free F2 presentation) is a genuine resolution and all
/// three degrees come from the total complex, including the torsion jump in
/// H^2 for even n. For m > 2 the central letter acts trivially and the base
/// is a redundant presentation of a free group, whose spot-2 cochain group
/// carries spurious classes (the presentation is not aspherical); degree 2 is
/// therefore computed from the base complex alone, which is exact there
/// because Gamma(m) is free.
inline CohomologyResult b_gamma_cohomology(const ProductModel& model, long m, long n,
                                           CohomologyStrategy strategy = CohomologyStrategy::Auto,
                                           const Int& modulus = 0) {
    std::size_t dim = std::size_t(n) + 1;
    const GroupPresentation& base = model.base;
    std::size_t gens = base.gen_count();
    std::size_t c1 = gens * dim;
    std::size_t c2 = base.relators.size() * dim;

    FoxComplex fox = fox_complex(base, n);
    IntMatrix z = rep_matrix_raw(model.z_value, n) - IntMatrix::identity(dim);

    // D0 : M -> M^gens + M
    IntMatrix d0(c1 + dim, dim);
    d0.set_block(0, 0, fox.d0);
    d0.set_block(c1, 0, z);

    // D1 : M^gens + M -> M^relators + M^gens
    IntMatrix d1(c2 + c1, c1 + dim);
    d1.set_block(0, 0, fox.d1);
    for (std::size_t g = 0; g < gens; ++g) d1.add_block(c2 + g * dim, g * dim, z, -1);
    d1.set_block(c2, c1, fox.d0);

    auto cohom = [&](const IntMatrix& a, const IntMatrix& b) {
        return modulus == 0 ? cochain_cohomology(a, b, strategy)
                            : cochain_cohomology_mod(a, b, modulus);
    };

    CohomologyResult out;
    out.model = model.label;
    out.m = m;
    out.n = n;
    out.modulus = modulus;
    out.groups[0] = cohom(IntMatrix(dim, 0), d0);
    out.groups[1] = cohom(d0, d1);

    if (m == 2) {
        IntMatrix d2(0, c2 + c1);
        out.groups[2] = cohom(d1, d2);
    } else {
        out.groups[2] = cohom(fox.d0, fox.d1);
    }
    return out;
}

inline CohomologyResult b_gamma_cohomology(long m, long n,
                                           CohomologyStrategy strategy = CohomologyStrategy::Auto,
                                           const Int& modulus = 0) {
    return b_gamma_cohomology(b_gamma_model(m), m, n, strategy, modulus);
}

/// Generating set of Gamma(m) as matrices: the structural generators for
/// m = 2, the Schreier generators otherwise.
inline std::vector<Mat2Z> gamma_generators(const GroupPresentation& pres, long m) {
    if (m == 2)
        return {eval_word(Word::s1().pow(2)), eval_word(Word::s2().pow(2)), w2()};
    std::vector<Mat2Z> out;
    for (std::size_t i = 0; i < pres.gen_count(); ++i) out.push_back(pres.generator_value(i));
    return out;
}

/// Universal-coefficients comparison: H^0(Gamma(m); M_n tensor Z_{p^a}) must
/// be isomorphic to the p^a-torsion subgroup of H^1(Gamma(m); M_n) whenever
/// H^0(Gamma(m); M_n) = 0, i.e. for n >= 1.
inline bool uct_check_with(const std::vector<Mat2Z>& gens, const AbelianGroup& h1, long n, long p,
                           long a) {
    if (n < 1) fail(errc::bad_degree, "uct_check: needs n >= 1 so that H^0 vanishes");
    if (!is_prime(p) || a < 1) fail(errc::bad_params, "uct_check: bad prime power");
    Int q = int_pow(Int(p), a);
    AbelianGroup invariants = invariant_submodule(gens, n, q).group;
    return invariants == h1.torsion_subgroup(q);
}

/// Steinberg-form check at p^a || m, a <= b: (i) the mod-p^b invariants of
/// Gamma(m) and Gamma(p^a) coincide as submodules, and (ii) they lie in the
/// span of the monomial families c x^(di) y^(dj) with p^(b-a) | c d.
inline bool steinberg_check_with(const std::vector<Mat2Z>& gens_m,
                                 const std::vector<Mat2Z>& gens_pa, long p, long a, long b,
                                 long n) {
    if (a > b || a < 1) fail(errc::bad_params, "steinberg_check: needs 1 <= a <= b");
    Int q = int_pow(Int(p), b);
    InvariantSubmodule inv_m = invariant_submodule(gens_m, n, q);
    InvariantSubmodule inv_pa = invariant_submodule(gens_pa, n, q);
    if (inv_m.generators != inv_pa.generators) return false;
    if (n == 0) return true;  // constants

    std::vector<IntMatrix::Triplet> trips;
    std::size_t row = 0;
    for (long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        long vd = p_adic_valuation(Int(d), p);
        long ce = b - a - vd;
        Int c = ce > 0 ? int_pow(Int(p), ce) : Int(1);
        for (long i = 0; i * d <= n; ++i) {
            trips.push_back({row, std::size_t(n - i * d), c});  // x^(d i) y^(n - d i)
            ++row;
        }
    }
    IntMatrix span = IntMatrix::from_triplets(row, std::size_t(n) + 1, trips);
    return span_contains(span, inv_m.generators, q);
}

}  // namespace congr
