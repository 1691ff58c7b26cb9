#include <catch2/catch_amalgamated.hpp>

#include "nwall/ff.hpp"

using nwall::Fp;
using nwall::PrimeField;

TEST_CASE("field rejects non-primes and out-of-range moduli") {
    CHECK_THROWS_AS(PrimeField(0), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(1), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(4), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
    CHECK_THROWS_AS(PrimeField(256), std::invalid_argument);
    CHECK_NOTHROW(PrimeField(2));
    CHECK_NOTHROW(PrimeField(251));
}

TEST_CASE("arithmetic examples") {
    PrimeField f3(3), f5(5), f7(7);
    CHECK(f3.add(2, 2) == 1);
    CHECK(f5.add(4, 1) == 0);
    CHECK(f5.mul(2, 3) == 1);
    CHECK(f5.inv(2) == 3);
    CHECK(f7.neg(0) == 0);
    CHECK_THROWS_AS(f7.inv(0), nwall::ZeroInversion);
    for (unsigned p : {2u, 3u, 5u, 7u}) {
        PrimeField f(p);
        CHECK(f.inv(1) == 1);
        for (unsigned x = 0; x < p; ++x) {
            CHECK(f.add(0, static_cast<Fp>(x)) == x);
            CHECK(f.mul(1, static_cast<Fp>(x)) == x);
        }
    }
}

TEST_CASE("exhaustive field laws for p <= 13") {
    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        PrimeField f(p);
        for (unsigned a = 0; a < p; ++a) {
            if (a != 0) CHECK(f.mul(static_cast<Fp>(a), f.inv(static_cast<Fp>(a))) == 1);
            for (unsigned b = 0; b < p; ++b) {
                Fp fa = static_cast<Fp>(a), fb = static_cast<Fp>(b);
                CHECK(f.add(fa, fb) == f.add(fb, fa));
                CHECK(f.mul(fa, fb) == f.mul(fb, fa));
                CHECK(f.sub(fa, fb) == f.add(fa, f.neg(fb)));
                CHECK(f.add(fa, fb) < p);
                for (unsigned c = 0; c < p; ++c) {
                    Fp fc = static_cast<Fp>(c);
                    CHECK(f.add(f.add(fa, fb), fc) == f.add(fa, f.add(fb, fc)));
                    CHECK(f.mul(f.mul(fa, fb), fc) == f.mul(fa, f.mul(fb, fc)));
                }
            }
        }
    }
}

TEST_CASE("sign and reduce") {
    PrimeField f5(5);
    CHECK(f5.sign(0) == 1);
    CHECK(f5.sign(1) == 4);
    CHECK(f5.sign(6) == 1);
    CHECK(f5.sign(7) == 4);
    CHECK(f5.reduce(-1) == 4);
    CHECK(f5.reduce(12) == 2);
    CHECK(f5.reduce(-10) == 0);
    PrimeField f2(2);
    CHECK(f2.sign(3) == 1);  // -1 == 1 in F_2
}
