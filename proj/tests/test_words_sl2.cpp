#include "congr/sl2.hpp"
#include "congr/words.hpp"

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

TEST_CASE("word reduction and round trip") {
    Word w = Word::s1() * Word::s1().inverse();
    CHECK(w.empty());
    Word v = Word::parse("s1.s2.s2'.s1'.s1.s2");
    CHECK(v == Word::s1() * Word::s2());
    CHECK(Word::parse(v.to_string()) == v);
    CHECK(Word::parse("1").empty());
    CHECK_THROWS_AS(Word::parse("bogus"), error);
}

TEST_CASE("eval_word on pinned values") {
    CHECK(eval_word(Word::s1()) == Mat2Z(1, 0, -1, 1));
    CHECK(eval_word(Word::s2()) == Mat2Z(1, 1, 0, 1));
    // (s1 s2 s2)^2 = -I
    CHECK(w2() == Mat2Z::minus_identity());
    // (s1 s2 s1)^4 = I, with s1 s2 s1 = ((0,1),(-1,0))
    Word aba = Word::s1() * Word::s2() * Word::s1();
    CHECK(eval_word(aba) == Mat2Z(0, 1, -1, 0));
    CHECK(eval_word(aba.pow(4)) == Mat2Z::identity());
}

TEST_CASE("eval_word is a homomorphism with determinant 1") {
    std::mt19937 rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        Word v = random_word(rng, 6), w = random_word(rng, 7);
        Mat2Z ev = eval_word(v), ew = eval_word(w);
        CHECK(eval_word(v * w) == ev * ew);
        CHECK(ev.a11 * ev.a22 - ev.a12 * ev.a21 == 1);
        CHECK(eval_word(v.inverse()) == ev.inverse());
    }
}

TEST_CASE("gamma membership") {
    CHECK(gamma_membership(Mat2Z::identity(), 5));
    CHECK(gamma_membership(eval_word(Word::s1().pow(5)), 5));
    CHECK(gamma_membership(Mat2Z::u_m(6), 6));
    CHECK(Mat2Z::u_m(6) == Mat2Z(7, -6, 6, -5));
    CHECK_FALSE(gamma_membership(Mat2Z::s1(), 3));
}

TEST_CASE("pi2 on pinned values and products") {
    CHECK(pi2(w2()) == -1);
    CHECK(pi2(eval_word(Word::s1().pow(2))) == 1);
    CHECK(pi2(Mat2Z::u_m(2)) == -1);
    CHECK(Mat2Z::u_m(2) == Mat2Z(3, -2, 2, -1));
    CHECK_THROWS_AS(pi2(Mat2Z::s1()), error);

    std::mt19937 rng(99);
    std::uniform_int_distribution<int> exp(-3, 3);
    std::uniform_int_distribution<int> eps(0, 1);
    auto random_gamma2 = [&] {
        Word w = Word::s1().pow(2 * exp(rng)) * Word::s2().pow(2 * exp(rng)) *
                 Word::s1().pow(2 * exp(rng));
        Mat2Z g = eval_word(w);
        int e = eps(rng);
        if (e) g = g * w2();
        return std::pair<Mat2Z, int>(g, e);
    };
    for (int trial = 0; trial < 40; ++trial) {
        auto [g, eg] = random_gamma2();
        auto [h, eh] = random_gamma2();
        CHECK(pi2(g) == (eg ? -1 : 1));
        CHECK(pi2(g * h) == pi2(g) * pi2(h));
    }
}

TEST_CASE("enumerate_group sizes") {
    CHECK(enumerate_group(2).size() == 6);
    CHECK(enumerate_group(4).size() == 48);
    CHECK(enumerate_group(6).size() == 144);
    // CRT order multiplicativity for coprime moduli
    CHECK(enumerate_group(10).size() == enumerate_group(2).size() * enumerate_group(5).size());
    CHECK(sl2_order(12) == Int(enumerate_group(12).size()));
}

TEST_CASE("enumeration is deterministic and starts at the identity") {
    CosetTable t = coset_table(5);
    CHECK(t.elements[0].is_identity());
    CHECK(t.elements.size() == 120);
    for (std::size_t i = 0; i < t.elements.size(); ++i)
        CHECK(Mat2Mod::reduce(eval_word(t.transversal[i]), 5) == t.elements[i]);
    CosetTable again = coset_table(5);
    for (std::size_t i = 0; i < t.elements.size(); ++i)
        CHECK(again.elements[i] == t.elements[i]);
}

TEST_CASE("generated_image") {
    CHECK(generated_image({Word::s1(), Word::s2()}, 7).is_all);
    CHECK(generated_image({Word::s1().pow(2), Word::s2().pow(2)}, 3).is_all);
    GeneratedImage g = generated_image({Word::s1().pow(2), Word::s2().pow(2)}, 2);
    CHECK(g.size == 1);
    CHECK_FALSE(g.is_all);
}
