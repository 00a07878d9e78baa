#pragma once

#include "congr/numeric.hpp"
#include "congr/words.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <vector>

namespace congr {

/// Element of SL(2,Z) with arbitrary-precision entries; determinant 1 is
/// checked on construction.
struct Mat2Z {
    Int a11, a12, a21, a22;

    Mat2Z() : a11(1), a12(0), a21(0), a22(1) {}
    Mat2Z(Int m11, Int m12, Int m21, Int m22)
        : a11(std::move(m11)), a12(std::move(m12)), a21(std::move(m21)), a22(std::move(m22)) {
        if (a11 * a22 - a12 * a21 != 1) fail(errc::bad_params, "Mat2Z: determinant must be 1");
    }

    static Mat2Z identity() { return Mat2Z(); }
    static Mat2Z s1() { return Mat2Z(1, 0, -1, 1); }
    static Mat2Z s2() { return Mat2Z(1, 1, 0, 1); }
    static Mat2Z minus_identity() { return Mat2Z(-1, 0, 0, -1); }
    /// U_m = ((m+1, -m), (m, -m+1)), a Gamma(m) element with pi2(U_m) = -1
    /// when m == 2 mod 4.
    static Mat2Z u_m(long m) { return Mat2Z(m + 1, -m, m, -m + 1); }

    Mat2Z operator*(const Mat2Z& o) const {
        return Mat2Z(a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                     a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22);
    }

    Mat2Z inverse() const { return Mat2Z(a22, -a12, -a21, a11); }

    bool operator==(const Mat2Z& o) const {
        return a11 == o.a11 && a12 == o.a12 && a21 == o.a21 && a22 == o.a22;
    }
    bool operator!=(const Mat2Z& o) const { return !(*this == o); }
};

/// Element of SL(2, Z_m): modulus plus four residues in [0, m).
struct Mat2Mod {
    long m;
    std::array<long, 4> r;  // row-major a11 a12 a21 a22

    static Mat2Mod reduce(const Mat2Z& g, long m) {
        if (m < 2) fail(errc::bad_params, "Mat2Mod: modulus must be >= 2");
        auto red = [m](const Int& x) {
            Int v = x % m;
            if (v < 0) v += m;
            return static_cast<long>(v);
        };
        Mat2Mod out{m, {red(g.a11), red(g.a12), red(g.a21), red(g.a22)}};
        return out;
    }

    Mat2Mod mul(const Mat2Mod& o) const {
        auto mm = [this](long x) { return ((x % m) + m) % m; };
        return Mat2Mod{m,
                       {mm(r[0] * o.r[0] + r[1] * o.r[2]), mm(r[0] * o.r[1] + r[1] * o.r[3]),
                        mm(r[2] * o.r[0] + r[3] * o.r[2]), mm(r[2] * o.r[1] + r[3] * o.r[3])}};
    }

    bool is_identity() const { return r[0] == 1 && r[1] == 0 && r[2] == 0 && r[3] == 1; }

    bool operator==(const Mat2Mod& o) const { return m == o.m && r == o.r; }
    bool operator<(const Mat2Mod& o) const { return r < o.r; }

    std::size_t encode() const {
        return std::size_t(((r[0] * m + r[1]) * m + r[2]) * m + r[3]);
    }
};

inline Mat2Z letter_value(Letter l) {
    switch (l) {
        case Letter::S1: return Mat2Z::s1();
        case Letter::S1inv: return Mat2Z::s1().inverse();
        case Letter::S2: return Mat2Z::s2();
        case Letter::S2inv: return Mat2Z::s2().inverse();
    }
    fail(errc::unknown_symbol, "letter_value: bad letter");
}

/// Product of generator matrices in letter order; the empty word is I.
inline Mat2Z eval_word(const Word& w) {
    Mat2Z m;
    for (Letter l : w.letters()) m = m * letter_value(l);
    return m;
}

/// w2 = (s1 s2 s2)^2 = -I, the central involution.
inline Mat2Z w2() { return eval_word((Word::s1() * Word::s2() * Word::s2()).pow(2)); }

/// M == I mod m, i.e. membership in the principal congruence subgroup.
inline bool gamma_membership(const Mat2Z& g, long m) {
    if (m < 2) fail(errc::bad_params, "gamma_membership: m must be >= 2");
    auto div = [m](const Int& x) { return x % m == 0; };
    return div(g.a11 - 1) && div(g.a12) && div(g.a21) && div(g.a22 - 1);
}

/// Projection Gamma(2) -> {+1,-1} reading a11 in Z_4^*; multiplicative, with
/// kernel the free factor generated by s1^2, s2^2.
inline int pi2(const Mat2Z& g) {
    if (!gamma_membership(g, 2)) fail(errc::not_in_gamma2, "pi2: matrix not in Gamma(2)");
    Int r = g.a11 % 4;
    if (r < 0) r += 4;
    return r == 1 ? 1 : -1;
}

/// Closed-form order of SL(2, Z_m): prod p^(3(a-1)) p (p^2-1).
inline Int sl2_order(long m) {
    if (m < 2) fail(errc::bad_params, "sl2_order: m must be >= 2");
    Int d = 1;
    for (const PrimePower& pp : factorize(m)) {
        d *= int_pow(Int(pp.p), 3 * (pp.e - 1));
        d *= Int(pp.p) * (Int(pp.p) * pp.p - 1);
    }
    return d;
}

/// Coset/group structure of SL(2, Z_m) explored breadth-first from the
/// identity with edge order (*s1, *s1^-1, *s2, *s2^-1). The BFS tree doubles
/// as the Schreier transversal downstream, so the traversal order is part of
/// the artifact's determinism contract.
struct CosetTable {
    long m = 0;
    std::vector<Mat2Mod> elements;            // BFS discovery order, [0] = I
    std::vector<std::array<long, 4>> edges;   // elements x letters -> element index
    std::vector<Word> transversal;            // tree word reaching each element
    std::vector<std::array<bool, 4>> is_tree; // edge (i, letter) lies in the BFS tree
};

inline CosetTable coset_table(long m) {
    if (m < 2) fail(errc::bad_params, "coset_table: m must be >= 2");
    static const std::array<Letter, 4> kLetters{Letter::S1, Letter::S1inv, Letter::S2,
                                                Letter::S2inv};
    std::array<Mat2Mod, 4> gen;
    for (int k = 0; k < 4; ++k) gen[k] = Mat2Mod::reduce(letter_value(kLetters[k]), m);

    CosetTable t;
    t.m = m;
    std::size_t space = std::size_t(m) * m * m * m;
    std::vector<long> index(space, -1);

    Mat2Mod id = Mat2Mod::reduce(Mat2Z::identity(), m);
    index[id.encode()] = 0;
    t.elements.push_back(id);
    t.transversal.push_back(Word());

    for (std::size_t head = 0; head < t.elements.size(); ++head) {
        t.edges.push_back({-1, -1, -1, -1});
        t.is_tree.push_back({false, false, false, false});
        for (int k = 0; k < 4; ++k) {
            Mat2Mod next = t.elements[head].mul(gen[k]);
            long& slot = index[next.encode()];
            if (slot < 0) {
                slot = long(t.elements.size());
                t.elements.push_back(next);
                Word w = t.transversal[head];
                w.push(kLetters[k]);
                t.transversal.push_back(std::move(w));
                t.is_tree[head][k] = true;
            }
            t.edges[head][k] = slot;
        }
    }
    return t;
}

/// All of SL(2, Z_m) in deterministic BFS order.
inline std::vector<Mat2Mod> enumerate_group(long m) { return coset_table(m).elements; }

struct GeneratedImage {
    Int size;
    bool is_all;
};

/// Size of the subgroup of SL(2, Z_m) generated by the reduced images of
/// `words`, and whether it is everything.
inline GeneratedImage generated_image(const std::vector<Word>& words, long m) {
    if (m < 2) fail(errc::bad_params, "generated_image: m must be >= 2");
    std::vector<Mat2Mod> gens;
    for (const Word& w : words) gens.push_back(Mat2Mod::reduce(eval_word(w), m));

    std::size_t space = std::size_t(m) * m * m * m;
    std::vector<char> seen(space, 0);
    std::vector<Mat2Mod> queue;
    Mat2Mod id = Mat2Mod::reduce(Mat2Z::identity(), m);
    seen[id.encode()] = 1;
    queue.push_back(id);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        for (const Mat2Mod& g : gens) {
            Mat2Mod next = queue[head].mul(g);
            char& flag = seen[next.encode()];
            if (!flag) {
                flag = 1;
                queue.push_back(next);
            }
        }
    }
    Int order = sl2_order(m);
    return GeneratedImage{Int(queue.size()), Int(queue.size()) == order};
}

}  // namespace congr
