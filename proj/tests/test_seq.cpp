#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "nwall/seq.hpp"

using namespace nwall;

TEST_CASE("paperfolding closed formula") {
    std::vector<unsigned> lvl1, lvl2;
    for (unsigned long long i = 1; i <= 8; ++i) {
        lvl1.push_back(paperfolding(1, i));
        lvl2.push_back(paperfolding(2, i));
    }
    CHECK(lvl1 == std::vector<unsigned>{0, 0, 1, 0, 0, 1, 1, 0});
    CHECK(lvl2 == std::vector<unsigned>{0, 0, 1, 0, 2, 1, 3, 0});
    CHECK(paperfolding(1, 1ull << 40) == 0);
    CHECK_THROWS_AS(paperfolding(1, 0), IndexZero);
    for (unsigned long long i = 1; i < 64; ++i) CHECK(paperfolding(1, i) <= 1);
    for (unsigned long long i = 1; i < 64; ++i) CHECK(paperfolding(2, i) <= 3);
}

TEST_CASE("fixed point of the pf1 morphism") {
    PrimeField f3(3);
    auto spec = builtin_spec("pf1", f3);
    auto w = fixed_point_prefix(spec.morphism, spec.start, 8);
    // letters A B C B A D C B
    CHECK(w == std::vector<Letter>{0, 1, 2, 1, 0, 3, 2, 1});
    auto coded = apply_coding(spec.coding, w);
    CHECK(coded == std::vector<Fp>{0, 0, 1, 0, 0, 1, 1, 0});

    Morphism1D ident{1, 1, {{0}}};
    CHECK(fixed_point_prefix(ident, 0, 5) == std::vector<Letter>(5, 0));

    auto pf2 = builtin_spec("pf2", PrimeField(5));
    CHECK(fixed_point_prefix(pf2.morphism, pf2.start, 4) == std::vector<Letter>{0, 1, 2, 3});

    Morphism1D bad{2, 2, {{1, 1}, {0, 0}}};
    CHECK_THROWS_AS(fixed_point_prefix(bad, 0, 4), NotProlongable);
}

TEST_CASE("prefix stability of fixed points") {
    PrimeField f5(5);
    for (const char* name : {"pf1", "pf2", "thue-morse"}) {
        auto spec = builtin_spec(name, f5);
        auto longer = fixed_point_prefix(spec.morphism, spec.start, 700);
        auto shorter = fixed_point_prefix(spec.morphism, spec.start, 123);
        CHECK(std::equal(shorter.begin(), shorter.end(), longer.begin()));
    }
}

TEST_CASE("compression matches the worked 2- and 4-compressions") {
    PrimeField f3(3);
    auto spec = builtin_spec("pf1", f3);
    Coding c2 = compress(spec.morphism, spec.coding);
    CHECK(c2.d == 2);
    CHECK(c2.images[0] == std::vector<Fp>{0, 0});   // A -> 00
    CHECK(c2.images[1] == std::vector<Fp>{1, 0});   // B -> 10
    CHECK(c2.images[2] == std::vector<Fp>{0, 1});   // C -> 01
    CHECK(c2.images[3] == std::vector<Fp>{1, 1});   // D -> 11
    Coding c4 = compress(spec.morphism, c2);
    CHECK(c4.images[0] == std::vector<Fp>{0, 0, 1, 0});
    CHECK(c4.images[3] == std::vector<Fp>{0, 1, 1, 1});  // D -> 0111
    CHECK(apply_coding(c4, {0}) == std::vector<Fp>{0, 0, 1, 0});

    Morphism1D ident{4, 1, {{0}, {1}, {2}, {3}}};
    Coding same = compress(ident, spec.coding);
    CHECK(same.images == spec.coding.images);

    CHECK(apply_coding(spec.coding, {}).empty());
}

TEST_CASE("compression preserves the coded sequence") {
    PrimeField f5(5);
    for (const char* name : {"pf1", "pf2"}) {
        auto spec = builtin_spec(name, f5);
        Coding c2 = compress(spec.morphism, spec.coding);
        auto word_k = fixed_point_prefix(spec.morphism, spec.start, 64);
        auto word = fixed_point_prefix(spec.morphism, spec.start, 32);
        auto via_c2 = apply_coding(c2, word);
        auto direct = apply_coding(spec.coding, word_k);
        CHECK(via_c2 == direct);
    }
}

TEST_CASE("formula agrees with morphism plus coding") {
    PrimeField f5(5);
    auto pf1 = builtin_spec("pf1", f5);
    auto pf2 = builtin_spec("pf2", f5);
    auto c1 = coded_prefix(pf1, 4096);
    auto c2 = coded_prefix(pf2, 4096);
    for (std::size_t i = 1; i <= 4096; ++i) {
        REQUIRE(c1[i - 1] == paperfolding(1, i));
        REQUIRE(c2[i - 1] == paperfolding(2, i));
    }
}

TEST_CASE("spec file parsing") {
    PrimeField f3(3);
    std::istringstream in(
        "# paperfolding morphism\n"
        "start A\n"
        "A -> AB\n"
        "B -> CB\n"
        "C -> AD\n"
        "D -> CD\n"
        "A => 0\n"
        "B => 0\n"
        "C => 1\n"
        "D => 1\n");
    auto spec = parse_spec(in, f3);
    CHECK(spec.morphism.alphabet_size == 4);
    CHECK(spec.morphism.k == 2);
    CHECK(coded_prefix(spec, 8) == std::vector<Fp>{0, 0, 1, 0, 0, 1, 1, 0});

    std::istringstream bad("start A\nA -> AB\nA => 0\nB -> XA\nB => 1\n");
    CHECK_THROWS_AS(parse_spec(bad, f3), std::invalid_argument);
    std::istringstream nostart("A -> AA\nA => 0\n");
    CHECK_THROWS_AS(parse_spec(nostart, f3), std::invalid_argument);
    std::istringstream notprol("start A\nA -> BA\nB -> AB\nA => 0\nB => 1\n");
    CHECK_THROWS_AS(parse_spec(notprol, f3), NotProlongable);
}

TEST_CASE("laurent substitution") {
    PrimeField f3(3), f5(5);
    std::vector<Fp> pf1{0, 0, 1, 0, 0, 1, 1, 0};

    SECTION("p(t) = t is the identity") {
        Poly t{{0, 1}};
        CHECK(laurent_substitute(pf1, t, 8, f3) == pf1);
        std::vector<Fp> rnd{2, 4, 0, 1, 3, 3, 2, 1};
        CHECK(laurent_substitute(rnd, t, 8, f5) == rnd);
    }
    SECTION("t^-2 expansion") {
        Poly t2{{0, 0, 1}};
        std::vector<Fp> a{1, 0, 0, 0};
        CHECK(laurent_substitute(a, t2, 4, f5) == std::vector<Fp>{0, 1, 0, 0});
    }
    SECTION("pf1 against the independent series-division oracle") {
        // frozen from two independent truncated-series routes
        Poly t2p1{{1, 0, 1}};
        CHECK(laurent_substitute(pf1, t2p1, 6, f3) == std::vector<Fp>{0, 0, 0, 0, 0, 1});
        std::vector<Fp> pf1_14{0, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0};
        CHECK(laurent_substitute(pf1_14, t2p1, 12, f3) ==
              std::vector<Fp>{0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0});
        Poly deg3{{1, 2, 0, 1}};
        std::vector<Fp> a{2, 1, 0, 3, 4, 1, 2, 0, 1, 3};
        CHECK(laurent_substitute(a, deg3, 9, f5) == std::vector<Fp>{0, 0, 2, 0, 1, 4, 3, 4, 4});
    }
    SECTION("degree-zero polynomial is rejected") {
        Poly c{{2}};
        CHECK_THROWS_AS(laurent_substitute(pf1, c, 4, f3), DegreeZero);
        Poly trimmed{{2, 0}};  // leading zero: degree 0 after trimming is invalid
        CHECK_THROWS_AS(trimmed.validate(), DegreeZero);
    }
}
