#include "congr/divided.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace congr;

TEST_CASE("delta components") {
    SECTION("one variable orders p^(a + v_p(i))") {
        DividedAlgebraSpec one{{1}, 2, 1};
        CHECK(delta_component(one, 0) == AbelianGroup(1));
        CHECK(delta_component(one, 0, true).is_trivial());
        CHECK(delta_component(one, 4) == AbelianGroup(0, {Int(8)}));
        for (long d = 1; d <= 20; ++d) {
            Int order = int_pow(Int(2), 1 + p_adic_valuation(Int(d), 2));
            CHECK(delta_component(one, d) == AbelianGroup(0, {order}));
        }
    }
    SECTION("two variables, weight 1, at p = 2") {
        DividedAlgebraSpec two{{1, 1}, 2, 1};
        CHECK(delta_component(two, 2) == AbelianGroup(0, {Int(2), Int(4), Int(4)}));
    }
    SECTION("graded dimensions over Z/p convolve") {
        // each nonzero tuple is one cyclic p-power: two-variable degree-d
        // dimension must equal sum over i+j=d of the one-variable dimensions
        DividedAlgebraSpec two{{1, 1}, 3, 2};
        for (long d = 1; d <= 12; ++d)
            CHECK(delta_component(two, d).invariant_factors.size() == std::size_t(d) + 1);
    }
}

TEST_CASE("predict_h1_torsion") {
    SECTION("p divides m") {
        CHECK(predict_h1_torsion(2, 2, 2).group == AbelianGroup(0, {Int(2), Int(4), Int(4)}));
        CHECK(predict_h1_torsion(3, 2, 3).group == AbelianGroup(0, {Int(3), Int(3), Int(3)}));
        CHECK(predict_h1_torsion(4, 1, 2).group == AbelianGroup(0, {Int(4), Int(4)}));
        // odd n at m = 2 gives (Z/2)^(n+1), the full mod-2 module
        for (long n = 1; n <= 15; n += 2)
            CHECK(predict_h1_torsion(2, n, 2).group ==
                  AbelianGroup(0, std::vector<Int>(n + 1, Int(2))));
    }
    SECTION("p coprime to m uses degree 2n and weights 2(p+1), 2p(p-1)") {
        CHECK(predict_h1_torsion(3, 2, 2).group == AbelianGroup(0, {Int(2)}));
        CHECK(predict_h1_torsion(2, 6, 5).group == AbelianGroup(0, {Int(5)}));
        CHECK(predict_h1_torsion(3, 8, 7).group == AbelianGroup(0, {Int(7)}));
        CHECK(predict_h1_torsion(5, 1, 3).group.is_trivial());
    }
    SECTION("summands are recorded per prime power") {
        TorsionPrediction t = predict_h1_torsion(2, 4, 2);
        // degree 4 tuples: (4,0),(3,1),(2,2),(1,3),(0,4) -> 8,2,4,2,8
        CHECK(t.group == AbelianGroup(0, {Int(2), Int(2), Int(4), Int(8), Int(8)}));
        REQUIRE(t.summands.size() == 3);
        CHECK(t.summands[0] == TorsionPrediction::Summand{2, 1, 2});
        CHECK(t.summands[1] == TorsionPrediction::Summand{2, 2, 1});
        CHECK(t.summands[2] == TorsionPrediction::Summand{2, 3, 2});
    }
    SECTION("degree precondition") {
        CHECK_THROWS_AS(predict_h1_torsion(2, 0, 2), error);
    }
}

TEST_CASE("xi presentation matches the divided algebra") {
    SECTION("pinned small cases") {
        // degree 1: single monomial xi_1, killed by p^a
        CHECK(xi_presentation_component(2, 1, 1) == AbelianGroup(0, {Int(2)}));
        CHECK(xi_presentation_component(2, 2, 1) == AbelianGroup(0, {Int(4)}));
        // degree 2 at p = 2: xi_1^2 = 2 xi_2 and 2 xi_1^2 = 0 force Z/4
        CHECK(xi_presentation_component(2, 1, 2) == AbelianGroup(0, {Int(4)}));
    }
    SECTION("full check up to degree 16") {
        for (long p : {2L, 3L, 5L})
            for (long a : {1L, 2L}) CHECK(verify_delta_presentation(p, a, 16));
    }
}

TEST_CASE("closed form ranks") {
    CHECK(closed_form_ranks(3).rank == 3);
    CHECK(closed_form_ranks(5).rank == 11);
    CHECK(closed_form_ranks(7).rank == 29);
    CHECK(closed_form_ranks(4).rank == 5);
    ClosedFormRanks six = closed_form_ranks(6);
    CHECK(six.rank == 13);
    CHECK(six.order == 144);
    REQUIRE(six.routes.size() == 2);
    CHECK(six.routes[0].second == 13);  // via p = 2, index 24
    CHECK(six.routes[1].second == 13);  // via p = 3, index 6
    CHECK(closed_form_ranks(5).h1_rank(1) == 20);
    CHECK(closed_form_ranks(5).h1_rank(0) == 11);
    CHECK_THROWS_AS(closed_form_ranks(2), error);

    // the Remark's printed formula disagrees on the odd-prime route
    CHECK(printed_composite_rank(6, 3, six.order) == 139);
    CHECK(printed_composite_rank(6, 2, six.order) == 13);
    CHECK(printed_composite_rank(4, 2, closed_form_ranks(4).order) == 5);

    CHECK(gamma2_h1_free_rank(0) == 2);
    CHECK(gamma2_h1_free_rank(2) == 3);
    CHECK(gamma2_h1_free_rank(3) == 0);
}

TEST_CASE("sl2 free rank series") {
    std::vector<long> f = sl2_free_rank_series(40);
    CHECK(f[4] == 1);
    CHECK(f[10] == 0);
    CHECK(f[20] == 3);
    // series * (1 - t^8)(1 - t^12) = t^4 (1 + t^4 - t^12 + t^16) exactly
    std::vector<long> prod(41, 0);
    for (long k = 0; k <= 40; ++k) {
        long v = f[k];
        if (k >= 8) v -= f[k - 8];
        if (k >= 12) v -= f[k - 12];
        if (k >= 20) v += f[k - 20];
        prod[k] = v;
    }
    for (long k = 0; k <= 40; ++k) {
        long expect = (k == 4 || k == 8) ? 1 : (k == 16) ? -1 : (k == 20) ? 1 : 0;
        CHECK(prod[k] == expect);
    }
}
