#include "doctest.h"

#include "ccm/value_fn.hpp"

using namespace ccm;

TEST_CASE("value tables enforce monotone concave shape") {
    ValueFn v = ValueFn::from_table({0, 10, 18, 24, 28});
    CHECK(v.support() == 4);
    CHECK(v.value(0) == 0);
    CHECK(v.value(3) == 24);
    CHECK(v.marginal_gain(1) == 10);
    CHECK(v.marginal_gain(4) == 4);

    CHECK_THROWS_AS(ValueFn::from_table({0, 10, 10}), NotConcave);      // flat step
    CHECK_THROWS_AS(ValueFn::from_table({0, 10, 25}), NotConcave);      // convex step
    CHECK_THROWS_AS(ValueFn::from_table({1, 2}), NotConcave);           // v(0) != 0
    CHECK_THROWS_AS(ValueFn::from_table({0, 5, 4}), NotConcave);        // decreasing
}

TEST_CASE("marginal_count is the largest prefix with delta >= price") {
    ValueFn v = ValueFn::from_table({0, 10, 18, 24, 28});  // deltas 10 8 6 4
    CHECK(v.marginal_count(Money{0}) == 4);
    CHECK(v.marginal_count(Money{4}) == 4);
    CHECK(v.marginal_count(Money{5}) == 3);
    CHECK(v.marginal_count(Money{7}) == 2);
    CHECK(v.marginal_count(Money{10}) == 1);
    CHECK(v.marginal_count(Money{11}) == 0);
}

TEST_CASE("power family builds valid tables") {
    for (double gamma : {0.3, 0.6, 1.0}) {
        ValueFn v = ValueFn::power(55.0, gamma, 6);
        CHECK(v.support() == 6);
        CHECK(v.value(0) == 0);
        std::int64_t prev = v.marginal_gain(1);
        for (int w = 2; w <= 6; ++w) {
            std::int64_t d = v.marginal_gain(w);
            CHECK(d >= 1);
            CHECK(d <= prev);
            prev = d;
        }
    }
}

TEST_CASE("default value function never submits") {
    ValueFn v;
    CHECK(v.support() == 0);
    CHECK(v.marginal_count(Money{1}) == 0);
}
