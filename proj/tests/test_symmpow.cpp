#include "congr/presentation.hpp"
#include "congr/symmpow.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace congr;

namespace {

Word random_word(std::mt19937& rng, std::size_t len) {
    std::uniform_int_distribution<int> dist(0, 3);
    Word w;
    for (std::size_t i = 0; i < len; ++i) w.push(static_cast<Letter>(dist(rng)));
    return w;
}

}  // namespace

TEST_CASE("rep_matrix on pinned values") {
    CHECK(rep_matrix(Mat2Z::identity(), 4).matrix == IntMatrix::identity(5));
    CHECK(rep_matrix(Mat2Z::s2(), 1).matrix == IntMatrix::from_rows({{1, 1}, {0, 1}}));
    // s1^2: x -> x - 2y, so x^2 -> x^2 - 4xy + 4y^2, xy -> xy - 2y^2, y^2 -> y^2
    Mat2Z s1sq = eval_word(Word::s1().pow(2));
    CHECK(rep_matrix(s1sq, 2).matrix ==
          IntMatrix::from_rows({{1, 0, 0}, {-4, 1, 0}, {4, -2, 1}}));
}

TEST_CASE("rep_matrix is a homomorphism and respects reduction") {
    std::mt19937 rng(1234);
    for (long n : {0L, 1L, 3L, 4L}) {
        for (int trial = 0; trial < 12; ++trial) {
            Word v = random_word(rng, 5), w = random_word(rng, 3);
            Mat2Z mv = eval_word(v), mw = eval_word(w);
            CHECK(rep_matrix_raw(mv * mw, n) == rep_matrix_raw(mv, n) * rep_matrix_raw(mw, n));
            CHECK(rep_matrix(mv, n, 6).matrix == rep_matrix_raw(mv, n).reduced_mod(6));
        }
    }
    // -I acts by (-1)^n
    for (long n = 0; n <= 5; ++n) {
        IntMatrix expect = scalar_matrix(n + 1, n % 2 == 0 ? 1 : -1);
        CHECK(rep_matrix_raw(Mat2Z::minus_identity(), n) == expect);
    }
}

TEST_CASE("invariant submodules mod q") {
    SECTION("w2 fixes everything mod 2 in odd degree") {
        for (long n : {1L, 3L, 5L}) {
            InvariantSubmodule inv = invariant_submodule({Mat2Z::minus_identity()}, n, 2);
            CHECK(inv.group == AbelianGroup(0, std::vector<Int>(n + 1, Int(2))));
            CHECK(inv.generators == IntMatrix::identity(n + 1));
        }
    }
    SECTION("gamma(2) generators on M_1 mod 4 fix exactly 2x and 2y") {
        std::vector<Mat2Z> gens{eval_word(Word::s1().pow(2)), eval_word(Word::s2().pow(2)), w2()};
        InvariantSubmodule inv = invariant_submodule(gens, 1, 4);
        // 2x is fixed mod 4 by all three, and so is 2y
        CHECK(span_contains(inv.generators, IntMatrix::from_rows({{2, 0}}), 4));
        CHECK(span_contains(inv.generators, IntMatrix::from_rows({{0, 2}}), 4));
        CHECK(inv.group == AbelianGroup(0, {Int(2), Int(2)}));
        CHECK_FALSE(span_contains(inv.generators, IntMatrix::from_rows({{1, 0}}), 4));
    }
    SECTION("Gamma(3) invariants mod 2 equal SL(2,Z) invariants mod 2") {
        GroupPresentation g3 = schreier_presentation(3);
        std::vector<Mat2Z> gens;
        for (std::size_t i = 0; i < g3.gen_count(); ++i) gens.push_back(g3.generator_value(i));
        for (long n : {1L, 2L, 3L}) {
            InvariantSubmodule a = invariant_submodule(gens, n, 2);
            InvariantSubmodule b = invariant_submodule({Mat2Z::s1(), Mat2Z::s2()}, n, 2);
            CHECK(a.generators == b.generators);
            CHECK(a.group == b.group);
        }
    }
}

TEST_CASE("integral invariants") {
    for (long m : {3L, 5L}) {
        std::vector<Mat2Z> gens{eval_word(Word::s1().pow(m)), eval_word(Word::s2().pow(m))};
        CHECK(integral_invariants(gens, 0) == AbelianGroup(1));
        CHECK(integral_invariants(gens, 4) == AbelianGroup(0));
    }
    CHECK(integral_invariants({}, 3) == AbelianGroup(4));
}
