#include "congr/cohomology.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace congr;

namespace {

AbelianGroup predicted_torsion(long m, long n) {
    AbelianGroup t;
    for (long p : {2L, 3L, 5L, 7L}) t = t.direct_sum(predict_h1_torsion(m, n, p).group);
    return t;
}

}  // namespace

TEST_CASE("fox complex composes to zero") {
    GroupPresentation g3 = schreier_presentation(3);
    for (long n : {0L, 1L, 2L}) {
        FoxComplex c = fox_complex(g3, n);
        CHECK((c.d1 * c.d0).is_zero());
    }
}

TEST_CASE("presentation cohomology of Gamma(3)") {
    GroupPresentation g3 = schreier_presentation(3);
    SECTION("n = 0: H^0 = Z, H^1 = Z^3") {
        CohomologyResult h = presentation_cohomology(g3, 0);
        CHECK(h.at(0) == AbelianGroup(1));
        CHECK(h.at(1) == AbelianGroup(3));
    }
    SECTION("n = 2: free rank 6 with the predicted torsion") {
        CohomologyResult h = presentation_cohomology(g3, 2);
        CHECK(h.at(0) == AbelianGroup());
        CHECK(h.at(1).free_rank == 6);
        CHECK(h.at(1).torsion_part() == predicted_torsion(3, 2));
    }
    SECTION("strategies agree on a real cell") {
        AbelianGroup a =
            presentation_cohomology(g3, 1, 0, CohomologyStrategy::KernelRestriction).at(1);
        AbelianGroup b = presentation_cohomology(g3, 1, 0, CohomologyStrategy::RankSplit).at(1);
        CHECK(a == b);
    }
}

TEST_CASE("free part of Gamma(2) via the free presentation") {
    GroupPresentation f2;
    f2.label = "F2";
    f2.generators = {Word::s1().pow(2), Word::s2().pow(2)};
    CohomologyResult h = presentation_cohomology(f2, 2);
    CHECK(h.at(1) == AbelianGroup(3, {Int(2), Int(4), Int(4)}));
}

TEST_CASE("gamma2 closed forms against the product resolution") {
    SECTION("n = 0") {
        CohomologyResult h = gamma2_cohomology(0, 5);
        CHECK(h.at(0) == AbelianGroup(1));
        CHECK(h.at(1) == AbelianGroup(2));
        CHECK(h.at(2) == AbelianGroup(0, {Int(2)}));
        CHECK(h.at(3) == AbelianGroup(0, {Int(2), Int(2)}));
        CHECK(h.at(4) == AbelianGroup(0, {Int(2)}));
        CHECK(h.at(5) == AbelianGroup(0, {Int(2), Int(2)}));
    }
    SECTION("n = 2, k = 2") {
        CHECK(gamma2_cohomology(2, 2).at(2) == AbelianGroup(0, {Int(2), Int(2), Int(2)}));
    }
    SECTION("n = 1, k = 1") {
        CHECK(gamma2_cohomology(1, 1).at(1) == AbelianGroup(0, {Int(2), Int(2)}));
    }
    SECTION("routes agree across a grid (mismatch would throw)") {
        for (long n = 0; n <= 6; ++n) CHECK_NOTHROW(gamma2_cohomology(n, 4));
    }
}

TEST_CASE("b_gamma cohomology") {
    SECTION("theorem part (a): (Z, Z^3, Z^2) at m = 2, n = 0") {
        CohomologyResult h = b_gamma_cohomology(2, 0);
        CHECK(h.at(0) == AbelianGroup(1));
        CHECK(h.at(1) == AbelianGroup(3));
        CHECK(h.at(2) == AbelianGroup(2));
    }
    SECTION("part (c) at n = 1: (Z/2)^2 and (Z/2)^4") {
        CohomologyResult h = b_gamma_cohomology(2, 1);
        CHECK(h.at(0) == AbelianGroup());
        CHECK(h.at(1) == AbelianGroup(0, {Int(2), Int(2)}));
        CHECK(h.at(2) == AbelianGroup(0, {Int(2), Int(2), Int(2), Int(2)}));
    }
    SECTION("part (b) at n = 2: H^1 = H^2 = H^1(Gamma(2); M_2) with full torsion") {
        CohomologyResult h = b_gamma_cohomology(2, 2);
        AbelianGroup h1_gamma2 = gamma2_cohomology(2, 1).at(1);
        CHECK(h.at(0) == AbelianGroup());
        CHECK(h.at(1) == h1_gamma2);
        CHECK(h.at(2) == h1_gamma2);
        CHECK(h1_gamma2 == AbelianGroup(3, {Int(2), Int(4), Int(4)}));
    }
    SECTION("part (d) at m = 3, n = 2") {
        GroupPresentation g3 = schreier_presentation(3);
        CohomologyResult gamma = presentation_cohomology(g3, 2);
        CohomologyResult h = b_gamma_cohomology(3, 2);
        CHECK(h.at(0) == AbelianGroup());
        CHECK(h.at(1) == gamma.at(1).direct_sum(gamma.at(0)));
        CHECK(h.at(2) == gamma.at(1));
    }
    SECTION("part (d) at m = 3, n = 0 keeps the degree shift") {
        GroupPresentation g3 = schreier_presentation(3);
        CohomologyResult gamma = presentation_cohomology(g3, 0);
        CohomologyResult h = b_gamma_cohomology(3, 0);
        CHECK(h.at(0) == gamma.at(0));
        CHECK(h.at(1) == gamma.at(1).direct_sum(gamma.at(0)));
        CHECK(h.at(2) == gamma.at(1));
    }
}

TEST_CASE("universal coefficients comparison") {
    std::vector<Mat2Z> g2 = gamma_generators(GroupPresentation{}, 2);
    AbelianGroup h1_22 = gamma2_cohomology(2, 1).at(1);
    CHECK(uct_check_with(g2, h1_22, 2, 2, 1));

    GroupPresentation g3 = schreier_presentation(3);
    std::vector<Mat2Z> gens3 = gamma_generators(g3, 3);
    AbelianGroup h1_31 = presentation_cohomology(g3, 1).at(1);
    CHECK(uct_check_with(gens3, h1_31, 1, 5, 1));
    CHECK(uct_check_with(gens3, h1_31, 1, 3, 1));
    CHECK_THROWS_AS(uct_check_with(gens3, h1_31, 0, 3, 1), error);
}

TEST_CASE("steinberg invariants") {
    std::vector<Mat2Z> g2 = gamma_generators(GroupPresentation{}, 2);
    SECTION("m = 2, p = 2, a = 1, b = 2") {
        CHECK(steinberg_check_with(g2, g2, 2, 1, 2, 0));
        CHECK(steinberg_check_with(g2, g2, 2, 1, 2, 1));
        CHECK(steinberg_check_with(g2, g2, 2, 1, 2, 2));
    }
    SECTION("m = 6 against m = 3 at p = 3, b = 2") {
        GroupPresentation g3 = schreier_presentation(3);
        GroupPresentation g6 = schreier_presentation(6);
        std::vector<Mat2Z> gens3 = gamma_generators(g3, 3);
        std::vector<Mat2Z> gens6 = gamma_generators(g6, 6);
        for (long n = 0; n <= 3; ++n) CHECK(steinberg_check_with(gens6, gens3, 3, 1, 2, n));
    }
    SECTION("bad parameters") {
        CHECK_THROWS_AS(steinberg_check_with(g2, g2, 2, 2, 1, 1), error);
    }
}
