#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "expect_error.hpp"
#include "frozen.hpp"
#include "oracle.hpp"
#include "umbral/error.hpp"
#include "umbral/series.hpp"

namespace {

using umbral::ErrorCode;
using umbral::Poly;
using umbral::Rational;
using umbral::Series;

oracle::Vec coeffs(const Series& s) {
  oracle::Vec out;
  for (const auto& c : s.coeffs()) out.push_back(c.constant_term());
  return out;
}

Series random_series(umbral::SplitMix64& rng, int order, Rational c0) {
  std::vector<Poly> c{Poly(c0)};
  for (int k = 1; k <= order; ++k) c.emplace_back(umbral::small_rational(rng));
  return Series::make(c, order);
}

Series random_delta(umbral::SplitMix64& rng, int order) {
  std::vector<Poly> c{Poly(0), Poly(umbral::small_nonzero_rational(rng))};
  for (int k = 2; k <= order; ++k) c.emplace_back(umbral::small_rational(rng));
  return Series::make(c, order);
}

Rational q(const char* s) { return umbral::parse_rational(s); }

TEST(Series, ConstructionExamples) {
  const Series one = Series::make({Poly(1)}, 4);
  EXPECT_EQ(one.order(), 4);
  EXPECT_EQ(one, Series::constant(Poly(1), 4));
  const Series e = Series::make({Poly(1), Poly(1), Poly(q("1/2")), Poly(q("1/6")), Poly(q("1/24"))}, 4);
  EXPECT_EQ(e, Series::exponential(4));
  EXPECT_EQ(Series::make({Poly(0), Poly(1)}, 3), Series::identity(3));
  expect_error(ErrorCode::InvalidArgument, [] { Series::make({Poly(1), Poly(1), Poly(1)}, 1); });
}

TEST(Series, ArithmeticExamples) {
  const int n = 4;
  const Series one_plus_t = Series::constant(Poly(1), n) + Series::identity(n);
  const Series one_minus_t = Series::constant(Poly(1), n) - Series::identity(n);
  EXPECT_EQ(one_plus_t * one_minus_t, Series::make({Poly(1), Poly(0), Poly(-1)}, n));
  EXPECT_EQ(Series::make({Poly(1), Poly(1)}, 3).pow_int(-1), Series::make({Poly(1), Poly(-1), Poly(1), Poly(-1)}, 3));
  const Series cube = Series::exponential(8).pow_int(3);
  const oracle::Vec e = coeffs(Series::exponential(8));
  EXPECT_EQ(coeffs(cube), oracle::ogf_mul(oracle::ogf_mul(e, e), e));
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(cube[k], Poly(umbral::pow(Rational(3), k) / umbral::factorial(k)));
}

TEST(Series, ExpLogExamples) {
  const Series e = exp(Series::identity(6));
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(e[k], Poly(1 / umbral::factorial(k)));
  const Series bell = exp(Series::exponential(4) - Series::constant(Poly(1), 4));
  EXPECT_EQ(coeffs(bell), (oracle::Vec{1, 1, 1, q("5/6"), q("5/8")}));
  EXPECT_EQ(bell.egf_moment(4), Poly(15));
}

TEST(Series, ComposeAndRevertExamples) {
  umbral::SplitMix64 rng(7);
  const Series g = random_series(rng, 8, 1);
  EXPECT_EQ(compose(g, Series::identity(8)), g);
  const Series shifted = Series::exponential(8) - Series::constant(Poly(1), 8);
  const Series bell = compose(Series::exponential(8), shifted);
  EXPECT_EQ(bell, exp(shifted));
  EXPECT_EQ(coeffs(bell), oracle::ogf_compose(coeffs(Series::exponential(8)), coeffs(shifted)));

  EXPECT_EQ(revert(Series::identity(6)), Series::identity(6));
  const Series tree = revert(Series::identity(8) * exp(-Series::identity(8)));
  for (int k = 1; k <= 8; ++k) EXPECT_EQ(tree.egf_moment(k), Poly(umbral::pow(Rational(k), k - 1))) << k;
  EXPECT_EQ(tree[3], Poly(q("3/2")));
  EXPECT_EQ(tree[4], Poly(q("8/3")));
}

TEST(Series, EgfMomentExamples) {
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(Series::exponential(6).egf_moment(k), Poly(1));
  for (int k = 1; k <= 6; ++k) EXPECT_EQ(Series::constant(Poly(1), 6).egf_moment(k), Poly(0));
}

TEST(Series, FrozenReversion) {
  std::vector<Poly> m;
  for (long v : frozen::reversion_input) m.emplace_back(v);
  const Series g = revert(Series::from_moments(m));
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(g.egf_moment(k), Poly(frozen::reversion_moments[k])) << k;
}

TEST(Series, RingLawsOnRandomSeries) {
  umbral::SplitMix64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 12;
    const Series a = random_series(rng, n, umbral::small_rational(rng));
    const Series b = random_series(rng, n, umbral::small_rational(rng));
    const Series c = random_series(rng, n, umbral::small_rational(rng));
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(coeffs(a * b), oracle::ogf_mul(coeffs(a), coeffs(b)));
  }
}

TEST(Series, PowersAddExponents) {
  umbral::SplitMix64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Series a = random_series(rng, 8, 1);
    const long n = rng.between(-4, 4);
    const long m = rng.between(-4, 4);
    EXPECT_EQ(a.pow_int(n + m), a.pow_int(n) * a.pow_int(m)) << n << " " << m;
    EXPECT_EQ(a * a.reciprocal(), Series::constant(Poly(1), 8));
  }
  const Series t = Series::identity(5);
  EXPECT_EQ(t.pow_int(2), Series::make({Poly(0), Poly(0), Poly(1)}, 5));
  expect_error(ErrorCode::NegativePowerOfDeltaSeries, [&] { t.pow_int(-1); });
}

TEST(Series, ExpLogRoundTrip) {
  umbral::SplitMix64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const Series h = random_delta(rng, 8);
    EXPECT_EQ(log(exp(h)), h);
    const Series f = random_series(rng, 8, 1);
    EXPECT_EQ(exp(log(f)), f);
  }
  expect_error(ErrorCode::DomainError, [] { exp(Series::constant(Poly(2), 3)); });
  expect_error(ErrorCode::DomainError, [] { log(Series::identity(3)); });
}

TEST(Series, RevertIsATwoSidedInverse) {
  umbral::SplitMix64 rng(14);
  for (int trial = 0; trial < 10; ++trial) {
    const Series h = random_delta(rng, 10);
    const Series g = revert(h);
    EXPECT_EQ(compose(g, h), Series::identity(10));
    EXPECT_EQ(compose(h, g), Series::identity(10));
    EXPECT_EQ(coeffs(g), oracle::ogf_revert(coeffs(h)));
    const Series unital = h + Series::constant(Poly(1), 10);
    EXPECT_EQ(compose(unital, revert(unital - Series::constant(Poly(1), 10))),
              Series::constant(Poly(1), 10) + Series::identity(10));
  }
  expect_error(ErrorCode::NotInvertible, [] { revert(Series::constant(Poly(1), 3)); });
  expect_error(ErrorCode::NotInvertible, [] { revert(Series::make({Poly(0), Poly(0), Poly(1)}, 3)); });
}

TEST(Series, PolynomialPowerSpecializesToIntegerPowers) {
  umbral::SplitMix64 rng(15);
  const Series f = random_series(rng, 6, 1);
  const Series fx = exp(log(f) * Poly::variable("x"));
  for (long n = -3; n <= 4; ++n) EXPECT_EQ(fx.substitute("x", Poly(n)), f.pow_int(n)) << n;
}

TEST(Series, OrdersMustMatch) {
  expect_error(ErrorCode::OrderMismatch, [] { (void)(Series::identity(3) + Series::identity(4)); });
  expect_error(ErrorCode::OrderMismatch, [] { (void)(Series::identity(3) * Series::identity(4)); });
}

TEST(Series, DerivativeAndShifts) {
  const Series e = Series::exponential(6);
  EXPECT_EQ(e.derivative(), e.truncate(5));
  EXPECT_EQ(Series::identity(4).shift_down(), Series::constant(Poly(1), 3));
  EXPECT_EQ(Series::constant(Poly(1), 3).shift_up(), Series::identity(4));
}

TEST(Series, JsonRoundTrip) {
  const Series s = exp(Series::identity(5) * Poly::variable("x"));
  const nlohmann::json j = to_json(s);
  EXPECT_EQ(j.at("order"), 5);
  EXPECT_EQ(j.at("coeffs").size(), 6U);
  EXPECT_EQ(j.at("coeffs")[0], "1");
  EXPECT_EQ(umbral::series_from_json(j), s);
}

}  // namespace
