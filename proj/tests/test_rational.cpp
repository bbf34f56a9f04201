#include <doctest.h>

#include "conekit/rational.hpp"

using conekit::Rational;

TEST_CASE("rationals stay in lowest terms") {
    Rational r(6, -8);
    CHECK(r.str() == "-3/4");
    CHECK(r.den() == 4);
    CHECK(Rational(10, 5).is_integer());
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("parse") {
    CHECK(Rational::parse("5/6") == Rational(5, 6));
    CHECK(Rational::parse("-0.75") == Rational(-3, 4));
    CHECK(Rational::parse("1e-3") == Rational(1, 1000));
    CHECK(Rational::parse("7") == Rational(7));
    CHECK_THROWS(Rational::parse("1/"));
    CHECK_THROWS(Rational::parse("abc"));
}

TEST_CASE("arithmetic and order") {
    const Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == b);
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(b < a);
    CHECK(pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(pow(Rational(2, 3), -2) == Rational(9, 4));
    CHECK(abs(Rational(-5, 7)) == Rational(5, 7));
    CHECK_THROWS(a / Rational(0));
}

TEST_CASE("from_double is exact") {
    CHECK(Rational::from_double(0.5) == Rational(1, 2));
    CHECK(Rational::from_double(0.1).to_double() == 0.1);
    CHECK(Rational::from_double(0.1) != Rational(1, 10));
}
