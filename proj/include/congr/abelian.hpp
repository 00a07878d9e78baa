#pragma once

#include "congr/numeric.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace congr {

/// Finitely generated abelian group in invariant-factor form: Z^free_rank
/// plus cyclic factors d1 | d2 | ... with every d >= 2. The representation is
/// canonical, so equality of groups is plain field equality.
struct AbelianGroup {
    long free_rank = 0;
    std::vector<Int> invariant_factors;

    AbelianGroup() = default;
    explicit AbelianGroup(long rank) : free_rank(rank) {}
    AbelianGroup(long rank, std::vector<Int> factors)
        : free_rank(rank), invariant_factors(std::move(factors)) {}

    bool operator==(const AbelianGroup& o) const {
        return free_rank == o.free_rank && invariant_factors == o.invariant_factors;
    }
    bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

    bool is_trivial() const { return free_rank == 0 && invariant_factors.empty(); }

    Int torsion_order() const {
        Int n = 1;
        for (const Int& d : invariant_factors) n *= d;
        return n;
    }

    AbelianGroup torsion_part() const { return AbelianGroup(0, invariant_factors); }

    /// Build from an arbitrary multiset of cyclic orders (0 meaning Z), merging
    /// into the canonical invariant-factor chain by prime-power redistribution.
    static AbelianGroup from_cyclic_orders(const std::vector<Int>& orders) {
        AbelianGroup g;
        std::map<long, std::vector<long>> exps;  // prime -> exponents, collected
        for (const Int& d : orders) {
            if (d == 0) {
                ++g.free_rank;
                continue;
            }
            if (d < 0) fail(errc::bad_params, "from_cyclic_orders: negative order");
            if (d == 1) continue;
            long rem = static_cast<long>(d);
            for (const PrimePower& pp : factorize(rem)) exps[pp.p].push_back(pp.e);
        }
        std::size_t slots = 0;
        for (auto& [p, es] : exps) {
            std::sort(es.begin(), es.end(), std::greater<long>());
            slots = std::max(slots, es.size());
        }
        std::vector<Int> factors(slots, Int(1));
        for (auto& [p, es] : exps)
            for (std::size_t i = 0; i < es.size(); ++i) factors[i] *= int_pow(Int(p), es[i]);
        std::reverse(factors.begin(), factors.end());  // ascending divisibility
        g.invariant_factors = std::move(factors);
        return g;
    }

    AbelianGroup direct_sum(const AbelianGroup& o) const {
        std::vector<Int> orders = invariant_factors;
        orders.insert(orders.end(), o.invariant_factors.begin(), o.invariant_factors.end());
        AbelianGroup g = from_cyclic_orders(orders);
        g.free_rank += free_rank + o.free_rank;
        return g;
    }

    /// - tensor Z/q : Z -> Z/q, Z/d -> Z/gcd(d,q).
    AbelianGroup tensor_mod(const Int& q) const {
        std::vector<Int> orders;
        for (long i = 0; i < free_rank; ++i) orders.push_back(q);
        for (const Int& d : invariant_factors) orders.push_back(gcd(d, q));
        return from_cyclic_orders(orders);
    }

    /// Subgroup of elements killed by q (the q-torsion subgroup); the free part
    /// contributes nothing.
    AbelianGroup torsion_subgroup(const Int& q) const {
        std::vector<Int> orders;
        for (const Int& d : invariant_factors) orders.push_back(gcd(d, q));
        return from_cyclic_orders(orders);
    }

    /// p-primary component of the torsion.
    AbelianGroup primary_component(long p) const {
        std::vector<Int> orders;
        for (const Int& d : invariant_factors) {
            Int q = 1;
            Int r = d;
            while (r % p == 0) {
                q *= p;
                r /= p;
            }
            orders.push_back(q);
        }
        return from_cyclic_orders(orders);
    }

    /// "0", "Z", "Z^3 + Z/2 + Z/4".
    std::string to_string() const {
        if (is_trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        if (free_rank == 1) {
            os << "Z";
            first = false;
        } else if (free_rank > 1) {
            os << "Z^" << free_rank;
            first = false;
        }
        for (const Int& d : invariant_factors) {
            if (!first) os << " + ";
            os << "Z/" << d;
            first = false;
        }
        return os.str();
    }

    static AbelianGroup parse(const std::string& text);
};

inline AbelianGroup AbelianGroup::parse(const std::string& text) {
    AbelianGroup g;
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s == "0" || s.empty()) return g;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find('+', pos);
        std::string term = s.substr(pos, next == std::string::npos ? next : next - pos);
        if (term == "Z") {
            g.free_rank += 1;
        } else if (term.rfind("Z^", 0) == 0) {
            g.free_rank += std::stol(term.substr(2));
        } else if (term.rfind("Z/", 0) == 0) {
            g.invariant_factors.push_back(Int(term.substr(2)));
        } else {
            fail(errc::bad_params, "AbelianGroup::parse: bad term '" + term + "'");
        }
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    // Re-canonicalize in case the text listed factors out of chain order.
    std::vector<Int> orders = g.invariant_factors;
    for (long i = 0; i < g.free_rank; ++i) orders.push_back(0);
    return from_cyclic_orders(orders);
}

}  // namespace congr
