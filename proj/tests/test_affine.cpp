#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "charcyc/affine.hpp"

using namespace charcyc;

TEST_CASE("rational parsing and formatting") {
    CHECK(parse_rational("3") == 3);
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational(" 7 / 6 ") == Rational(7, 6));
    CHECK(format_rational(Rational(-5, 6)) == "-5/6");
    CHECK(format_rational(Rational(4, 2)) == "2");
    CHECK_THROWS(parse_rational("x"));
    CHECK_THROWS(parse_rational("1/0"));
}

TEST_CASE("floor and ceil of rationals") {
    CHECK(floor_div(Rational(-5, 2)) == -3);
    CHECK(ceil_div(Rational(-5, 2)) == -2);
    CHECK(floor_div(Rational(7, 3)) == 2);
    CHECK(ceil_div(Rational(7, 3)) == 3);
    CHECK(floor_div(Rational(4)) == 4);
    CHECK(ceil_div(Rational(-4)) == -4);
}

TEST_CASE("affine forms keep a canonical shape") {
    AffineInt c = AffineInt::param("c");
    AffineInt x = c - c;
    CHECK(x.is_zero());
    CHECK(x.coeffs().empty());
    CHECK(x == AffineInt(0));
    CHECK((c + 1) - 1 == c);
    CHECK(AffineInt::param("c", 0).is_constant());
}

TEST_CASE("affine rendering") {
    AffineInt c = AffineInt::param("c");
    CHECK((c - 2).str() == "c - 2");
    CHECK((c * Rational(-3)).str() == "-3c");
    CHECK((c + 1).str() == "c + 1");
    CHECK((AffineInt::param("a") - c).str() == "a - c");
    CHECK(AffineInt(0).str() == "0");
    CHECK(AffineInt(-4).str() == "-4");
    CHECK((Rational(1, 2) * c).str() == "1/2c");
    CHECK((1 - c).str() == "-c + 1");
}

TEST_CASE("substitution") {
    AffineInt c = AffineInt::param("c");
    AffineInt m = c - 2;
    CHECK(m.substitute({{"c", 2}}) == AffineInt(0));
    CHECK(m.substitute({{"c", 5}}).as_int() == 3);
    CHECK(m.substitute({{"d", 5}}) == m);
    AffineInt a = AffineInt::param("a");
    CHECK((a - c).substitute("a", c).is_zero());
    CHECK((3 * a + 1).substitute("a", c + 1) == 3 * c + 4);
}

TEST_CASE("integrality and products") {
    AffineInt c = AffineInt::param("c");
    CHECK((c * Rational(2) + 1).is_integral());
    CHECK_FALSE((c * Rational(1, 2)).is_integral());
    CHECK_THROWS_AS(c.as_int(), AffineError);
    CHECK_THROWS_AS(AffineInt(Rational(1, 2)).as_int(), AffineError);
    CHECK(c * AffineInt(3) == 3 * c);
    CHECK_THROWS_AS(c * c, AffineError);
}
