#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "knotfactor/laurent.hpp"

using namespace knotfactor;

TEST_CASE("laurent basics") {
    Laurent zero;
    CHECK(zero.is_zero());
    Laurent one(1);
    CHECK(one.coefficient(0) == 1);
    Laurent t = Laurent::monomial(1);
    Laurent p = t + one;
    CHECK(p.coefficient(0) == 1);
    CHECK(p.coefficient(1) == 1);
    CHECK(p.min_exponent() == 0);
    CHECK(p.max_exponent() == 1);
    CHECK((p - p).is_zero());
}

TEST_CASE("laurent multiplication") {
    // (t - t^-1)(t + t^-1) = t^2 - t^-2
    Laurent a = Laurent::monomial(1) - Laurent::monomial(-1);
    Laurent b = Laurent::monomial(1) + Laurent::monomial(-1);
    Laurent p = a * b;
    CHECK(p == Laurent::monomial(2) - Laurent::monomial(-2));
    CHECK((a * Laurent()).is_zero());
}

TEST_CASE("cancellation removes terms") {
    Laurent a = Laurent::monomial(3, 5);
    Laurent b = Laurent::monomial(3, -5);
    CHECK((a + b).is_zero());
}

TEST_CASE("exact division") {
    Laurent delta = Laurent::monomial(2, -1) + Laurent::monomial(-2, -1);
    Laurent prod = delta * delta * delta;
    CHECK(prod.divide_exact(delta) == delta * delta);
    Laurent one(1);
    CHECK_THROWS_AS(one.divide_exact(delta), std::domain_error);
    CHECK_THROWS_AS(one.divide_exact(Laurent()), std::domain_error);
}

TEST_CASE("variable inversion") {
    Laurent p = Laurent::monomial(2, 3) + Laurent::monomial(-1, -4);
    Laurent q = p.invert_variable();
    CHECK(q.coefficient(-2) == 3);
    CHECK(q.coefficient(1) == -4);
    CHECK(q.invert_variable() == p);
}

TEST_CASE("rendering") {
    Laurent p = Laurent::monomial(-4, -1) + Laurent::monomial(-3) +
                Laurent::monomial(-1);
    CHECK(p.str() == "-t^-4 + t^-3 + t^-1");
    CHECK(Laurent().str() == "0");
    CHECK(Laurent(7).str() == "7");
    CHECK(Laurent::monomial(1, -2).str("A") == "-2*A");
}

TEST_CASE("coefficient overflow detected") {
    Laurent big = Laurent::monomial(0, INT64_MAX / 2 + 1);
    CHECK_THROWS_AS(big + big, std::overflow_error);
    CHECK_THROWS_AS(big * Laurent(3), std::overflow_error);
}
