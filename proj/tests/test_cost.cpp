#include "vcsp/cost.hpp"
#include "vcsp/generators.hpp"

#include <doctest.h>

using namespace vcsp;

TEST_CASE("costs are canonical nonnegative rationals or infinity") {
    CHECK(Cost(2, 4) == Cost(1, 2));
    CHECK(Cost(3, 1).numerator() == 3);
    CHECK(Cost(3, 1).denominator() == 1);
    CHECK(Cost(6, 4).numerator() == 3);
    CHECK(Cost(6, 4).denominator() == 2);
    CHECK(Cost::zero().is_zero());
    CHECK(Cost::infinity().is_infinite());
    CHECK_THROWS_AS(Cost(-1, 2), Error);
    CHECK_THROWS_AS(Cost(1, 0), Error);
}

TEST_CASE("addition absorbs into infinity") {
    Cost half(1, 2);
    CHECK((half + Cost::infinity()).is_infinite());
    CHECK((Cost::infinity() + half).is_infinite());
    CHECK((Cost::infinity() + Cost::infinity()).is_infinite());
    CHECK(half + Cost(1, 3) == Cost(5, 6));
}

TEST_CASE("total order puts infinity on top") {
    CHECK(Cost(1, 2) < Cost(2, 3));
    CHECK(Cost(1) < Cost::infinity());
    CHECK_FALSE(Cost::infinity() < Cost::infinity());
    CHECK(std::min(Cost::infinity(), Cost(7)) == Cost(7));
}

TEST_CASE("string round trip, reduced forms") {
    CHECK(Cost(1, 2).str() == "1/2");
    CHECK(Cost(5).str() == "5");
    CHECK(Cost::infinity().str() == "inf");
    CHECK(Cost::parse("3/6") == Cost(1, 2)); // lenient in, canonical out
    CHECK(Cost::parse("inf").is_infinite());
    CHECK(Cost::parse("0") == Cost::zero());
    CHECK_THROWS_AS(Cost::parse("-1"), ParseError);
    CHECK_THROWS_AS(Cost::parse("1/0"), ParseError);
    CHECK_THROWS_AS(Cost::parse("a/b"), ParseError);
    CHECK_THROWS_AS(Cost::parse(""), ParseError);
    CHECK_THROWS_AS(Cost::parse("1.5"), ParseError);
}

TEST_CASE("addition is associative and commutative on random finite/infinite mixes") {
    Rng rng(41);
    std::vector<Cost> pool = {Cost(0), Cost(1), Cost(1, 2), Cost(2, 3), Cost(7, 5),
                              Cost(3), Cost::infinity()};
    for (int round = 0; round < 500; ++round) {
        Cost a = rng.pick(pool);
        Cost b = rng.pick(pool);
        Cost c = rng.pick(pool);
        CHECK(a + b == b + a);
        CHECK((a + b) + c == a + (b + c));
        // canonical form survives add-then-reduce
        Cost sum = a + b;
        if (sum.is_finite()) {
            CHECK(Cost::parse(sum.str()) == sum);
            CHECK(boost::multiprecision::gcd(sum.numerator(), sum.denominator()) == 1);
        }
    }
}
