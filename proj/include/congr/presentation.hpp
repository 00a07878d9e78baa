#pragma once

#include "congr/int_matrix.hpp"
#include "congr/sl2.hpp"
#include "congr/words.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace congr {

/// One letter of a word over a presentation's abstract generators.
struct GenRef {
    std::size_t index;
    int sign;  // +1 or -1

    bool operator==(const GenRef& o) const { return index == o.index && sign == o.sign; }
    bool operator<(const GenRef& o) const {
        return index != o.index ? index < o.index : sign < o.sign;
    }
};

using GenWord = std::vector<GenRef>;

inline void gen_push(GenWord& w, GenRef g) {
    if (!w.empty() && w.back().index == g.index && w.back().sign == -g.sign)
        w.pop_back();
    else
        w.push_back(g);
}

inline GenWord gen_reduce(const GenWord& w) {
    GenWord out;
    for (GenRef g : w) gen_push(out, g);
    return out;
}

inline GenWord gen_inverse(const GenWord& w) {
    GenWord out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back({it->index, -it->sign});
    return out;
}

/// Finite presentation whose generators carry values in SL(2,Z) (as words in
/// s1, s2). Relators are words over the abstract generators; construction
/// checks that every relator evaluates to the identity matrix.
struct GroupPresentation {
    std::vector<Word> generators;  // generator values as words in s1, s2
    std::vector<GenWord> relators;
    std::string label;

    std::size_t gen_count() const { return generators.size(); }

    Mat2Z generator_value(std::size_t i) const { return eval_word(generators[i]); }

    Mat2Z eval(const GenWord& w) const {
        Mat2Z m;
        for (GenRef g : w) {
            if (g.index >= generators.size())
                fail(errc::unknown_symbol, "presentation eval: generator out of range");
            Mat2Z v = generator_value(g.index);
            m = m * (g.sign > 0 ? v : v.inverse());
        }
        return m;
    }

    void validate() const {
        std::set<Word> seen;
        for (const Word& g : generators)
            if (!seen.insert(g).second)
                fail(errc::bad_params, "presentation: duplicate generator " + g.to_string());
        for (const GenWord& r : relators)
            if (eval(r) != Mat2Z::identity())
                fail(errc::bad_params, "presentation: relator does not evaluate to I");
    }

    /// Relator-exponent matrix, one row per relator.
    IntMatrix exponent_matrix() const {
        IntMatrix e(relators.size(), generators.size());
        for (std::size_t i = 0; i < relators.size(); ++i)
            for (GenRef g : relators[i]) e.at(i, g.index) += g.sign;
        return e;
    }
};

/// SL(2,Z) = < a, b | a b a b^-1 a^-1 b^-1, (a b a)^4 > with a = s1, b = s2.
inline GroupPresentation sl2_presentation() {
    GroupPresentation p;
    p.label = "SL(2,Z)";
    p.generators = {Word::s1(), Word::s2()};
    GenRef a{0, 1}, A{0, -1}, b{1, 1}, B{1, -1};
    p.relators = {gen_reduce({a, b, a, B, A, B})};
    GenWord braid4;
    for (int i = 0; i < 4; ++i) {
        braid4.push_back(a);
        braid4.push_back(b);
        braid4.push_back(a);
    }
    p.relators.push_back(braid4);
    p.validate();
    return p;
}

/// Formal Z-linear combination of generator words, the value of a Fox
/// derivative. Terms are combined and sorted, so equal sums compare equal.
struct FormalWordSum {
    std::vector<std::pair<Int, GenWord>> terms;  // coefficient, word

    static FormalWordSum collect(std::vector<std::pair<Int, GenWord>> raw) {
        std::map<GenWord, Int> acc;
        for (auto& [c, w] : raw) acc[w] += c;
        FormalWordSum out;
        for (auto& [w, c] : acc)
            if (c != 0) out.terms.emplace_back(c, w);
        return out;
    }

    bool operator==(const FormalWordSum& o) const { return terms == o.terms; }
};

/// Free differential calculus: d(uv)/dx = du/dx + u dv/dx, dx/dx = 1,
/// d(x^-1)/dx = -x^-1, dy/dx = 0.
inline FormalWordSum fox_derivative(const GenWord& relator, std::size_t gen,
                                    std::size_t alphabet_size) {
    if (gen >= alphabet_size) fail(errc::unknown_symbol, "fox_derivative: unknown generator");
    std::vector<std::pair<Int, GenWord>> raw;
    GenWord prefix;
    for (GenRef g : relator) {
        if (g.index >= alphabet_size)
            fail(errc::unknown_symbol, "fox_derivative: relator uses unknown generator");
        if (g.sign > 0) {
            if (g.index == gen) raw.emplace_back(1, prefix);
            gen_push(prefix, g);
        } else {
            gen_push(prefix, g);
            if (g.index == gen) raw.emplace_back(-1, prefix);
        }
    }
    return FormalWordSum::collect(std::move(raw));
}

/// Schreier data for Gamma(m) inside the fixed SL(2,Z) presentation: the
/// coset space is SL(2, Z_m), the transversal is the BFS tree, and each
/// non-tree edge (t, x) contributes the generator t x (t x)^-1-bar.
inline GroupPresentation schreier_presentation(long m) {
    if (m < 3) fail(errc::m_too_small, "schreier_presentation: needs m >= 3 (use the Gamma(2) model)");
    GroupPresentation sl2 = sl2_presentation();
    CosetTable t = coset_table(m);
    const std::size_t n = t.elements.size();

    // letter indices in the coset table: 0 = *s1, 1 = *s1^-1, 2 = *s2, 3 = *s2^-1
    auto is_tree_edge = [&](std::size_t coset, int k) {
        long target = t.edges[coset][k];
        int kinv = k ^ 1;
        return t.is_tree[coset][k] || t.is_tree[std::size_t(target)][kinv];
    };

    GroupPresentation p;
    p.label = "Gamma(" + std::to_string(m) + ")";
    std::map<std::pair<std::size_t, int>, std::size_t> gen_of_edge;
    for (std::size_t i = 0; i < n; ++i) {
        for (int k : {0, 2}) {  // positive letters s1, s2
            if (is_tree_edge(i, k)) continue;
            std::size_t j = std::size_t(t.edges[i][k]);
            Word w = t.transversal[i];
            w.push(k == 0 ? Letter::S1 : Letter::S2);
            w = w * t.transversal[j].inverse();
            gen_of_edge[{i, k}] = p.generators.size();
            p.generators.push_back(std::move(w));
        }
    }

    // Rewrite each SL(2,Z) relator from every coset.
    for (std::size_t start = 0; start < n; ++start) {
        for (const GenWord& relator : sl2.relators) {
            GenWord out;
            std::size_t c = start;
            for (GenRef g : relator) {
                int pos = g.index == 0 ? 0 : 2;
                if (g.sign > 0) {
                    if (!is_tree_edge(c, pos))
                        gen_push(out, {gen_of_edge.at({c, pos}), 1});
                    c = std::size_t(t.edges[c][pos]);
                } else {
                    std::size_t prev = std::size_t(t.edges[c][pos ^ 1]);
                    if (!is_tree_edge(prev, pos))
                        gen_push(out, {gen_of_edge.at({prev, pos}), -1});
                    c = prev;
                }
            }
            if (c != start)
                fail(errc::mismatch, "schreier rewriting did not return to its coset");
            if (!out.empty()) p.relators.push_back(std::move(out));
        }
    }

    p.validate();
    for (const Word& g : p.generators)
        if (!gamma_membership(eval_word(g), m))
            fail(errc::mismatch, "schreier generator not in Gamma(m)");
    return p;
}

/// Direct-product structural model: a base presentation, an optional central
/// letter z (with its SL(2,Z) value), and an optional order-2 torsion letter.
struct ProductModel {
    GroupPresentation base;
    bool has_central = false;
    Mat2Z z_value;
    bool has_torsion = false;
    Mat2Z torsion_value;
    std::string label;

    void validate() const {
        for (std::size_t i = 0; i < base.gen_count(); ++i) {
            Mat2Z g = base.generator_value(i);
            if (has_central && g * z_value != z_value * g)
                fail(errc::bad_params, "ProductModel: central value does not commute");
            if (has_torsion && g * torsion_value != torsion_value * g)
                fail(errc::bad_params, "ProductModel: torsion value does not commute");
        }
        if (has_torsion && torsion_value * torsion_value != Mat2Z::identity())
            fail(errc::bad_params, "ProductModel: torsion letter must have order 2");
    }
};

/// Gamma(2) = F2 x Z2: free base on A = s1^2, B = s2^2, torsion letter w2.
inline ProductModel gamma2_model() {
    ProductModel m;
    m.label = "Gamma(2)";
    m.base.label = "F2";
    m.base.generators = {Word::s1().pow(2), Word::s2().pow(2)};
    m.has_torsion = true;
    m.torsion_value = w2();
    m.base.validate();
    m.validate();
    return m;
}

/// B_Gamma(m) as a split central extension: for m > 2 the base is the
/// Schreier presentation and z maps to I; for m = 2 the base is the free
/// part of Gamma(2) and the center maps onto w2 = -I.
inline ProductModel b_gamma_model(long m) {
    if (m < 2) fail(errc::bad_params, "b_gamma_model: m must be >= 2");
    ProductModel out;
    out.label = "B_Gamma(" + std::to_string(m) + ")";
    out.has_central = true;
    if (m == 2) {
        out.base.label = "F2";
        out.base.generators = {Word::s1().pow(2), Word::s2().pow(2)};
        out.z_value = w2();
    } else {
        out.base = schreier_presentation(m);
        out.z_value = Mat2Z::identity();
    }
    out.base.validate();
    out.validate();
    return out;
}

}  // namespace congr
