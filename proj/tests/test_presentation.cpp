#include "congr/cochain.hpp"
#include "congr/presentation.hpp"
#include "congr/symmpow.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace congr;

namespace {

GenWord parse_gens(const char* s) {
    // lowercase = positive, uppercase = inverse; alphabet x, y -> 0, 1
    GenWord w;
    for (const char* p = s; *p; ++p) {
        if (*p == 'x') gen_push(w, {0, 1});
        else if (*p == 'X') gen_push(w, {0, -1});
        else if (*p == 'y') gen_push(w, {1, 1});
        else if (*p == 'Y') gen_push(w, {1, -1});
    }
    return w;
}

}  // namespace

TEST_CASE("sl2 presentation") {
    GroupPresentation p = sl2_presentation();
    REQUIRE(p.gen_count() == 2);
    CHECK(p.eval(p.relators[0]) == Mat2Z::identity());
    CHECK(p.eval(p.relators[1]) == Mat2Z::identity());
    CHECK(cokernel_group(p.exponent_matrix().transpose()) == AbelianGroup(0, {Int(12)}));
}

TEST_CASE("fox derivatives") {
    SECTION("product rule on xy") {
        FormalWordSum d = fox_derivative(parse_gens("xy"), 0, 2);
        REQUIRE(d.terms.size() == 1);
        CHECK(d.terms[0].first == 1);
        CHECK(d.terms[0].second.empty());
    }
    SECTION("inverse rule") {
        FormalWordSum d = fox_derivative(parse_gens("X"), 0, 2);
        REQUIRE(d.terms.size() == 1);
        CHECK(d.terms[0].first == -1);
        CHECK(d.terms[0].second == parse_gens("X"));
    }
    SECTION("commutator") {
        FormalWordSum d = fox_derivative(parse_gens("xyXY"), 1, 2);
        FormalWordSum expect = FormalWordSum::collect(
            {{Int(1), parse_gens("x")}, {Int(-1), parse_gens("xyXY")}});
        CHECK(d == expect);
    }
    SECTION("unknown symbol") {
        CHECK_THROWS_AS(fox_derivative(parse_gens("xy"), 5, 2), error);
    }
}

TEST_CASE("fundamental fox identity in a representation") {
    // sum_x rho(dr/dx) (rho(x) - I) = rho(r) - I for arbitrary words r
    std::mt19937 rng(2718);
    std::uniform_int_distribution<int> letter(0, 3);
    GroupPresentation p = sl2_presentation();
    const long n = 2;
    std::size_t dim = n + 1;
    for (int trial = 0; trial < 25; ++trial) {
        GenWord r;
        for (int i = 0; i < 8; ++i) {
            int l = letter(rng);
            gen_push(r, {std::size_t(l / 2), l % 2 == 0 ? 1 : -1});
        }
        IntMatrix lhs(dim, dim);
        for (std::size_t g = 0; g < 2; ++g) {
            IntMatrix dsum(dim, dim);
            for (const auto& [c, w] : fox_derivative(r, g, 2).terms)
                dsum = dsum + rep_matrix_raw(p.eval(w), n) * scalar_matrix(dim, c);
            IntMatrix gm = rep_matrix_raw(p.generator_value(g), n);
            lhs = lhs + dsum * (gm - IntMatrix::identity(dim));
        }
        IntMatrix rhs = rep_matrix_raw(p.eval(r), n) - IntMatrix::identity(dim);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("schreier presentations of Gamma(m)") {
    SECTION("m too small") { CHECK_THROWS_AS(schreier_presentation(2), error); }

    for (long m : {3L, 4L, 5L}) {
        DYNAMIC_SECTION("m = " << m) {
            GroupPresentation p = schreier_presentation(m);
            std::size_t index = enumerate_group(m).size();
            CHECK(p.gen_count() == index + 1);
            for (const Word& g : p.generators) CHECK(gamma_membership(eval_word(g), m));

            // abelianization: free rank = rank of the free group Gamma(m),
            // torsion-free (Smith divisors of the exponent matrix in {0,1})
            AbelianGroup ab = cokernel_group(p.exponent_matrix().transpose());
            long expected_rank = m == 3 ? 3 : m == 4 ? 5 : 11;
            CHECK(ab == AbelianGroup(expected_rank));
        }
    }
}

TEST_CASE("structural models") {
    SECTION("gamma2") {
        ProductModel g2 = gamma2_model();
        CHECK(g2.base.generator_value(0) == Mat2Z(1, 0, -2, 1));
        CHECK(g2.base.generator_value(1) == Mat2Z(1, 2, 0, 1));
        CHECK(g2.has_torsion);
        CHECK(g2.torsion_value == Mat2Z::minus_identity());
        CHECK_FALSE(g2.has_central);
        CHECK(g2.base.relators.empty());
    }
    SECTION("b_gamma at m = 2") {
        ProductModel b2 = b_gamma_model(2);
        CHECK(b2.has_central);
        CHECK(b2.z_value == Mat2Z::minus_identity());
        CHECK(b2.base.generators ==
              std::vector<Word>{Word::s1().pow(2), Word::s2().pow(2)});
    }
    SECTION("b_gamma at m = 3") {
        ProductModel b3 = b_gamma_model(3);
        CHECK(b3.has_central);
        CHECK(b3.z_value == Mat2Z::identity());
        CHECK(b3.base.gen_count() == 25);
    }
}
