#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "knotfactor/rational.hpp"

using namespace knotfactor;

TEST_CASE("rational reduction and normal form") {
    Rational a(6, 4);
    CHECK(a.num() == 3);
    CHECK(a.den() == 2);
    Rational b(-6, -4);
    CHECK(b.num() == 3);
    CHECK(b.den() == 2);
    Rational c(6, -4);
    CHECK(c.num() == -3);
    CHECK(c.den() == 2);
    CHECK(Rational(0, 7) == Rational(0));
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
}

TEST_CASE("rational arithmetic") {
    Rational half(1, 2), third(1, 3);
    CHECK(half + third == Rational(5, 6));
    CHECK(half - third == Rational(1, 6));
    CHECK(half * third == Rational(1, 6));
    CHECK(half / third == Rational(3, 2));
    CHECK(-half == Rational(-1, 2));
    CHECK_THROWS_AS(half / Rational(0), std::domain_error);
    CHECK(Rational(1, 3) + Rational(2, 3) == Rational(1));
}

TEST_CASE("rational comparisons are exact") {
    CHECK(Rational(1, 3) < Rational(34, 100));
    CHECK(Rational(-1, 2) < Rational(1, 1000000));
    CHECK(Rational(2, 6) == Rational(1, 3));
    CHECK(Rational(1, 3).sign() == 1);
    CHECK(Rational(-1, 3).sign() == -1);
    CHECK(Rational(0).sign() == 0);
    // denominators near the 64-bit edge still compare correctly
    long long big = 3'037'000'499LL;
    CHECK(Rational(1, big) > Rational(0));
    CHECK(Rational(big - 1, big) < Rational(1));
}

TEST_CASE("rational overflow is detected, not wrapped") {
    Rational big(INT64_MAX / 2, 1);
    CHECK_THROWS_AS(big * big, std::overflow_error);
    // products that reduce back into range are fine
    Rational x(1LL << 40, 3), y(3, 1LL << 40);
    CHECK(x * y == Rational(1));
}

TEST_CASE("orientation predicate") {
    Vec2 a{Rational(0), Rational(0)};
    Vec2 b{Rational(1), Rational(0)};
    Vec2 up{Rational(1, 2), Rational(1, 7)};
    Vec2 down{Rational(1, 2), Rational(-1, 7)};
    Vec2 on{Rational(1, 2), Rational(0)};
    CHECK(orient(a, b, up) == 1);
    CHECK(orient(a, b, down) == -1);
    CHECK(orient(a, b, on) == 0);
    CHECK(on_segment(a, b, on));
    CHECK(!on_segment(a, b, Vec2{Rational(2), Rational(0)}));
}

TEST_CASE("segment crossing predicate") {
    Vec2 a{Rational(-1), Rational(0)}, b{Rational(1), Rational(0)};
    Vec2 c{Rational(0), Rational(-1)}, d{Rational(0), Rational(1)};
    CHECK(segments_cross(a, b, c, d));
    Vec2 p = cross_point(a, b, c, d);
    CHECK(p.x == Rational(0));
    CHECK(p.y == Rational(0));
    // disjoint segments
    Vec2 e{Rational(5), Rational(1)}, f{Rational(6), Rational(2)};
    CHECK(!segments_cross(a, b, e, f));
    // sharing an endpoint is not a proper crossing
    Vec2 g{Rational(1), Rational(0)}, h{Rational(2), Rational(3)};
    CHECK(!segments_cross(a, b, g, h));
    // collinear overlap flagged as degenerate
    bool degenerate = false;
    Vec2 i{Rational(0), Rational(0)}, j{Rational(3), Rational(0)};
    CHECK(!segments_cross(a, b, i, j, &degenerate));
    CHECK(degenerate);
}

TEST_CASE("crossing point of skew chords") {
    Vec2 a{Rational(0), Rational(0)}, b{Rational(4), Rational(4)};
    Vec2 c{Rational(0), Rational(4)}, d{Rational(4), Rational(0)};
    Vec2 p = cross_point(a, b, c, d);
    CHECK(p.x == Rational(2));
    CHECK(p.y == Rational(2));
    Vec2 e{Rational(0), Rational(1)}, f{Rational(1), Rational(0)};
    Vec2 q = cross_point(a, b, e, f);
    CHECK(q.x == Rational(1, 2));
    CHECK(q.y == Rational(1, 2));
}
