#pragma once

#include "congr/abelian.hpp"
#include "congr/cochain.hpp"
#include "congr/int_matrix.hpp"
#include "congr/numeric.hpp"
#include "congr/sl2.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <vector>

namespace congr {

/// Graded pieces of the p^a-local divided polynomial algebra on variables of
/// the given weights. The degree-d component is a direct sum over exponent
/// tuples (i_1, ..., i_k), sum i_j w_j = d, of cyclic groups of order
/// p^(a + min over nonzero i_j of v_p(i_j)); the zero tuple contributes Z.
struct DividedAlgebraSpec {
    std::vector<long> weights;
    long p = 2;
    long a = 1;

    void validate() const {
        if (!is_prime(p)) fail(errc::bad_params, "DividedAlgebraSpec: p must be prime");
        if (a < 1) fail(errc::bad_params, "DividedAlgebraSpec: a must be >= 1");
        for (long w : weights)
            if (w < 1) fail(errc::bad_params, "DividedAlgebraSpec: weights must be >= 1");
    }
};

namespace detail {

inline void enumerate_weighted_tuples(const std::vector<long>& weights, long degree,
                                      std::vector<long>& cur,
                                      const std::function<void(const std::vector<long>&)>& emit) {
    if (cur.size() + 1 == weights.size()) {
        long w = weights.back();
        if (degree % w == 0) {
            cur.push_back(degree / w);
            emit(cur);
            cur.pop_back();
        }
        return;
    }
    long w = weights[cur.size()];
    for (long i = 0; i * w <= degree; ++i) {
        cur.push_back(i);
        enumerate_weighted_tuples(weights, degree - i * w, cur, emit);
        cur.pop_back();
    }
}

}  // namespace detail

inline AbelianGroup delta_component(const DividedAlgebraSpec& spec, long degree,
                                    bool positive_part = false) {
    spec.validate();
    if (degree < 0) fail(errc::bad_degree, "delta_component: degree must be >= 0");
    if (degree == 0) return positive_part ? AbelianGroup() : AbelianGroup(1);
    if (spec.weights.empty()) return AbelianGroup();
    std::vector<Int> orders;
    std::vector<long> cur;
    detail::enumerate_weighted_tuples(spec.weights, degree, cur, [&](const std::vector<long>& t) {
        long minval = -1;
        for (long i : t) {
            if (i == 0) continue;
            long v = p_adic_valuation(Int(i), spec.p);
            if (minval < 0 || v < minval) minval = v;
        }
        if (minval < 0) return;  // the zero tuple, degree 0 only
        orders.push_back(int_pow(Int(spec.p), spec.a + minval));
    });
    return AbelianGroup::from_cyclic_orders(orders);
}

/// Graded list of prime-power cyclic summands, mergeable into an AbelianGroup.
struct TorsionPrediction {
    long degree = 0;
    struct Summand {
        long prime;
        long exponent;
        long multiplicity;
        bool operator==(const Summand& o) const {
            return prime == o.prime && exponent == o.exponent && multiplicity == o.multiplicity;
        }
    };
    std::vector<Summand> summands;
    AbelianGroup group;
};

/// Predicted p-torsion of H^1(Gamma(m); M_n): for p^a || m the degree-n part
/// of the positive divided algebra on two weight-1 variables at level p^a;
/// for p not dividing m the degree-2n part on variables of weight 2(p+1) and
/// 2p(p-1) at level p (the doubled topological grading).
inline TorsionPrediction predict_h1_torsion(long m, long n, long p) {
    if (m < 2) fail(errc::bad_params, "predict_h1_torsion: m must be >= 2");
    if (!is_prime(p)) fail(errc::bad_params, "predict_h1_torsion: p must be prime");
    if (n <= 0) fail(errc::bad_degree, "predict_h1_torsion: needs n >= 1");
    long a = m % p == 0 ? p_adic_valuation(Int(m), p) : 0;
    DividedAlgebraSpec spec;
    long degree;
    if (a >= 1) {
        spec = DividedAlgebraSpec{{1, 1}, p, a};
        degree = n;
    } else {
        spec = DividedAlgebraSpec{{2 * (p + 1), 2 * p * (p - 1)}, p, 1};
        degree = 2 * n;
    }
    TorsionPrediction out;
    out.degree = degree;
    out.group = delta_component(spec, degree, /*positive_part=*/true);
    std::map<long, long> mult;  // exponent -> multiplicity (single prime p)
    for (const Int& d : out.group.invariant_factors)
        ++mult[p_adic_valuation(d, p)];
    for (const auto& [e, k] : mult) out.summands.push_back({p, e, k});
    return out;
}

/// Degree-d component of Z[xi_1, xi_p, xi_{p^2}, ...] / (p^a xi_1,
/// xi_{p^i}^p - p xi_{p^{i+1}}), presented by the monomial relation matrix.
inline AbelianGroup xi_presentation_component(long p, long a, long d) {
    // monomials: exponent tuples (e_0, e_1, ..., e_K), sum e_i p^i = d
    long top = 1;
    std::vector<long> powers{1};
    while (top <= d / p) {
        top *= p;
        powers.push_back(top);
    }
    std::vector<std::vector<long>> tuples;
    std::vector<long> cur(powers.size(), 0);
    std::function<void(std::size_t, long)> rec = [&](std::size_t idx, long rem) {
        if (idx + 1 == powers.size()) {
            if (rem % powers[idx] == 0) {
                cur[idx] = rem / powers[idx];
                tuples.push_back(cur);
                cur[idx] = 0;
            }
            return;
        }
        for (long e = 0; e * powers[idx] <= rem; ++e) {
            cur[idx] = e;
            rec(idx + 1, rem - e * powers[idx]);
            cur[idx] = 0;
        }
    };
    rec(0, d);
    std::map<std::vector<long>, std::size_t> index;
    for (std::size_t i = 0; i < tuples.size(); ++i) index[tuples[i]] = i;

    std::vector<IntMatrix::Triplet> trips;
    std::size_t col = 0;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
        // p^a kills any monomial containing xi_1
        if (tuples[i][0] >= 1) {
            trips.push_back({i, col, int_pow(Int(p), a)});
            ++col;
        }
        // xi_{p^k}^p = p xi_{p^{k+1}} rewrites
        for (std::size_t k = 0; k + 1 < powers.size(); ++k) {
            if (tuples[i][k] < p) continue;
            std::vector<long> other = tuples[i];
            other[k] -= p;
            other[k + 1] += 1;
            trips.push_back({i, col, Int(1)});
            trips.push_back({index.at(other), col, Int(-p)});
            ++col;
        }
    }
    IntMatrix rel = IntMatrix::from_triplets(tuples.size(), col, trips);
    return cokernel_group(rel);
}

/// Check the divided-power presentation degree by degree against the closed
/// form, plus the defining identities x_i x_j = binom(i+j, i) x_{i+j}.
inline bool verify_delta_presentation(long p, long a, long max_degree) {
    if (max_degree < 1) fail(errc::bad_degree, "verify_delta_presentation: max_degree >= 1");
    DividedAlgebraSpec one_var{{1}, p, a};
    for (long d = 1; d <= max_degree; ++d) {
        AbelianGroup lhs = xi_presentation_component(p, a, d);
        AbelianGroup rhs = delta_component(one_var, d);
        if (lhs != rhs) return false;
        // closed form of the one-variable component order
        Int expected = int_pow(Int(p), a + p_adic_valuation(Int(d), p));
        if (rhs != AbelianGroup(0, {expected})) return false;
    }
    // x_i x_j = binom(i+j, i) x_{i+j} in Delta[x]: (i+j)! = binom * i! * j!
    std::vector<Int> fact{Int(1)};
    for (long k = 1; k <= max_degree; ++k) fact.push_back(fact.back() * k);
    for (long i = 0; i <= max_degree; ++i)
        for (long j = 0; i + j <= max_degree; ++j)
            if (binomial(i + j, i) * fact[i] * fact[j] != fact[i + j]) return false;
    return true;
}

struct ClosedFormRanks {
    Int order;      // |SL(2, Z_m)|
    long rank;      // rank of the free group Gamma(m), m >= 3
    std::vector<std::pair<long, long>> routes;  // prime factor -> rank via it

    long h1_rank(long n) const { return n == 0 ? rank : (rank - 1) * (n + 1); }
};

/// Rank of Gamma(p) for an odd prime, 1 + p(p^2-1)/12.
inline long gamma_prime_rank(long p) {
    return 1 + p * (p * p - 1) / 12;
}

/// Schreier-route rank of the free group Gamma(m) through a chosen prime
/// factor: index * (rank Gamma(p) - 1) + 1 for odd p, index/2 + 1 for p = 2.
inline long schreier_route_rank(long m, long p, const Int& order) {
    Int i = order / (Int(p) * (Int(p) * p - 1));
    Int r = p == 2 ? Int(i / 2 + 1) : Int(i * (gamma_prime_rank(p) - 1) + 1);
    return static_cast<long>(r);
}

/// The Remark's printed composite formula (i(p(p^2-1)-1)+1 for odd p), kept
/// for the documented-discrepancy report.
inline long printed_composite_rank(long m, long p, const Int& order) {
    Int i = order / (Int(p) * (Int(p) * p - 1));
    Int r = p == 2 ? Int(i / 2 + 1) : Int(i * (Int(p) * (Int(p) * p - 1) - 1) + 1);
    return static_cast<long>(r);
}

inline ClosedFormRanks closed_form_ranks(long m) {
    if (m < 3) fail(errc::bad_params, "closed_form_ranks: m must be >= 3");
    ClosedFormRanks out;
    out.order = sl2_order(m);
    long rank = -1;
    for (const PrimePower& pp : factorize(m)) {
        long r = schreier_route_rank(m, pp.p, out.order);
        out.routes.emplace_back(pp.p, r);
        if (rank < 0) rank = r;
        else if (rank != r)
            fail(errc::mismatch, "closed_form_ranks: prime routes disagree");
    }
    out.rank = rank;
    return out;
}

/// Free rank of H^1(Gamma(2); M_n): 2 at n = 0, n+1 for even n > 0, 0 for
/// odd n (w2 kills odd-degree rational classes).
inline long gamma2_h1_free_rank(long n) {
    if (n == 0) return 2;
    return n % 2 == 0 ? n + 1 : 0;
}

/// Coefficients of t^4 (1 + t^4 - t^12 + t^16) / ((1 - t^8)(1 - t^12)) up to
/// max_degree; the t^(2n) entry tabulates the free rank of the first
/// cohomology of SL(2,Z) with M_n coefficients.
inline std::vector<long> sl2_free_rank_series(long max_degree) {
    if (max_degree < 0) fail(errc::bad_degree, "sl2_free_rank_series: max_degree >= 0");
    std::vector<long> f(max_degree + 1, 0);
    auto num = [](long k) -> long {
        switch (k) {
            case 4: return 1;
            case 8: return 1;
            case 16: return -1;
            case 20: return 1;
            default: return 0;
        }
    };
    for (long k = 0; k <= max_degree; ++k) {
        long v = num(k);
        if (k >= 8) v += f[k - 8];
        if (k >= 12) v += f[k - 12];
        if (k >= 20) v -= f[k - 20];
        f[k] = v;
    }
    return f;
}

}  // namespace congr
