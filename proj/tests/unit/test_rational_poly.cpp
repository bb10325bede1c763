#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "expect_error.hpp"
#include "umbral/poly.hpp"
#include "umbral/rational.hpp"

namespace {

using umbral::ErrorCode;
using umbral::Poly;
using umbral::Rational;

TEST(Rational, ParseAndPrint) {
  EXPECT_EQ(umbral::parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(umbral::parse_rational(" -7 "), Rational(-7));
  EXPECT_EQ(umbral::to_string(Rational(3, 2)), "3/2");
  EXPECT_EQ(umbral::to_string(umbral::parse_rational("-4/2")), "-2");
  expect_error(ErrorCode::InvalidArgument, [] { umbral::parse_rational("1/0"); });
  expect_error(ErrorCode::InvalidArgument, [] { umbral::parse_rational("x"); });
}

TEST(Rational, Helpers) {
  EXPECT_EQ(umbral::factorial(10), Rational(3628800));
  EXPECT_EQ(umbral::binomial(10, 3), Rational(120));
  EXPECT_EQ(umbral::binomial(3, 5), Rational(0));
  EXPECT_EQ(umbral::pow(Rational(-2, 3), 3), Rational(-8, 27));
  EXPECT_TRUE(umbral::is_integer(umbral::parse_rational("4/2")));
  EXPECT_FALSE(umbral::is_integer(Rational(1, 2)));
}

TEST(Poly, ArithmeticAndCanonicalText) {
  const Poly x = Poly::variable("x");
  const Poly y = Poly::variable("y");
  EXPECT_EQ(((x + y) * (x - y)).to_string(), "x^2 - y^2");
  EXPECT_EQ((x + 1).pow(3), x.pow(3) + x.pow(2) * Rational(3) + x * Rational(3) + Poly(1));
  EXPECT_TRUE((x - x).is_zero());
  EXPECT_EQ(Poly::parse("x^2 - 3/2*x*y + 1"), x.pow(2) - x * y * Rational(3, 2) + Poly(1));
  EXPECT_EQ(Poly::parse("y*x"), Poly::parse("x*y"));
  EXPECT_EQ(Poly(Rational(5, 3)).constant(), Rational(5, 3));
  EXPECT_FALSE(x.constant().has_value());
  EXPECT_EQ(x.as_variable(), "x");
  expect_error(ErrorCode::DomainError, [&] { (void)(x / Rational(0)); });
  expect_error(ErrorCode::SyntaxError, [] { Poly::parse("x +"); });
}

TEST(Poly, SubstituteAndDifferentiate) {
  const Poly p = Poly::parse("x^3 + 2*x*y - 5");
  EXPECT_EQ(p.substitute("x", Poly(2)), Poly::parse("4*y + 3"));
  const Poly s = Poly::parse("x + y");
  EXPECT_EQ(p.substitute("x", s), s.pow(3) + s * Poly::parse("2*y") - Poly(5));
  EXPECT_EQ(p.derivative("x"), Poly::parse("3*x^2 + 2*y"));
  EXPECT_EQ(p.derivative("z"), Poly(0));
}

TEST(Poly, FallingFactorial) {
  const Poly x = Poly::variable("x");
  EXPECT_EQ(umbral::falling_factorial(x, 0), Poly(1));
  EXPECT_EQ(umbral::falling_factorial(x, 3), Poly::parse("x^3 - 3*x^2 + 2*x"));
  EXPECT_EQ(umbral::falling_factorial(Poly(5), 3), Poly(60));
}

TEST(Poly, JsonRoundTrip) {
  for (const char* text : {"0", "7/3", "x^2*y - 1/2*x + 3", "a1*a2 + a3"}) {
    const Poly p = Poly::parse(text);
    EXPECT_EQ(umbral::poly_from_json(umbral::to_json(p)), p) << text;
  }
  EXPECT_EQ(umbral::to_json(Poly(Rational(2, 3))), "2/3");
}

}  // namespace
