#include <gtest/gtest.h>

#include "expect_error.hpp"
#include "oracle.hpp"
#include "umbral/auxiliary_ops.hpp"
#include "umbral/combinatorics.hpp"

namespace {

using namespace umbral;

const std::vector<Poly>& moments(const Workspace& ws, AtomId id) { return ws.atom(id).moments; }

AtomId random_umbra(Workspace& ws, SplitMix64& rng, const std::string& name) {
  return ws.define_umbra(name, oracle::polys(oracle::random_moments(rng, ws.order())));
}

AtomId random_unital_umbra(Workspace& ws, SplitMix64& rng, const std::string& name) {
  auto m = oracle::random_moments(rng, ws.order());
  m[1] = small_nonzero_rational(rng);
  return ws.define_umbra(name, oracle::polys(m));
}

bool similar(const Workspace& ws, AtomId a, AtomId b) { return ws.similar_to(Expr(a), Expr(b)).similar; }

TEST(AuxiliaryOps, DotExamples) {
  Workspace ws(8, {"x"});
  const AtomId three = dot(ws, DotLeft::integer(3), ws.unity());
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(moments(ws, three)[k], Poly(pow(Rational(3), k)));
  SplitMix64 rng(41);
  const AtomId a = random_umbra(ws, rng, "a");
  EXPECT_TRUE(similar(ws, dot(ws, DotLeft::integer(0), a), ws.augmentation()));
  EXPECT_TRUE(similar(ws, dot(ws, DotLeft::integer(1), a), a));
  const AtomId b = bell_umbra(ws);
  const AtomId bu = dot(ws, DotLeft::umbra(b), ws.unity());
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(moments(ws, bu)[k], Poly(combinatorics::bell_number(k)));
  const AtomId xb = bell_umbra(ws, DotLeft::indeterminate("x"));
  const AtomId xb1 = dot(ws, DotLeft::indeterminate("x"), b);
  EXPECT_TRUE(similar(ws, xb, xb1));
  for (int k = 0; k <= 8; ++k) {
    EXPECT_EQ(moments(ws, xb)[k], combinatorics::exponential_poly(k));
    EXPECT_EQ(moments(ws, xb)[k].substitute("x", Poly(1)), moments(ws, b)[k]);
  }
}

TEST(AuxiliaryOps, IntegerDotIsAConvolutionPower) {
  Workspace ws(8);
  SplitMix64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    const AtomId a = random_umbra(ws, rng, "a" + std::to_string(trial));
    const auto am = oracle::rationals(moments(ws, a));
    for (int n = 0; n <= 4; ++n) {
      EXPECT_EQ(moments(ws, dot(ws, DotLeft::integer(n), a)), oracle::polys(oracle::convolution_power(am, n))) << n;
    }
    const auto neg = oracle::rationals(moments(ws, dot(ws, DotLeft::integer(-2), a)));
    EXPECT_EQ(oracle::binomial_convolution(neg, oracle::convolution_power(am, 2)),
              oracle::rationals(moments(ws, ws.augmentation())));
  }
}

TEST(AuxiliaryOps, ScalarDotSpecializesToIntegers) {
  Workspace ws(7, {"x", "y"});
  SplitMix64 rng(43);
  const AtomId a = random_umbra(ws, rng, "a");
  const AtomId xa = dot(ws, DotLeft::indeterminate("x"), a);
  for (long n = -2; n <= 3; ++n) {
    const AtomId na = dot(ws, DotLeft::integer(n), a);
    for (int k = 0; k <= 7; ++k) EXPECT_EQ(moments(ws, xa)[k].substitute("x", Poly(n)), moments(ws, na)[k]);
  }
  // (x + y).a is x.a + y.a' and x.(y.a) is (xy).a.
  const AtomId sum = dot(ws, DotLeft::scalar(Poly::parse("x + y")), a);
  const AtomId ya = dot(ws, DotLeft::indeterminate("y"), a);
  EXPECT_TRUE(ws.similar_to(Expr(sum), Expr(xa) + Expr(ya)).similar);
  const AtomId nested = dot(ws, DotLeft::indeterminate("x"), ya);
  EXPECT_TRUE(similar(ws, nested, dot(ws, DotLeft::scalar(Poly::parse("x*y")), a)));
}

TEST(AuxiliaryOps, PointPowers) {
  Workspace ws(6);
  SplitMix64 rng(44);
  const AtomId a = random_unital_umbra(ws, rng, "a");
  EXPECT_TRUE(similar(ws, point_power(ws, a, 0), ws.unity()));
  EXPECT_TRUE(similar(ws, point_power(ws, a, 1), a));
  const AtomId a3 = point_power(ws, a, 3);
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(moments(ws, a3)[k], moments(ws, a)[k].pow(3));
  const AtomId b2 = point_power(ws, bell_umbra(ws), 2);
  EXPECT_EQ(moments(ws, b2)[3], Poly(25));
  EXPECT_TRUE(similar(ws, point_power(ws, point_power(ws, a3, 2), 1), point_power(ws, a, 6)));

  Workspace zero(3);
  const AtomId z = zero.define_umbra("z", {Poly(1), Poly(0), Poly(1), Poly(1)});
  expect_error(ErrorCode::ZeroMomentReciprocal, [&] { point_power(zero, z, -1); });
}

TEST(AuxiliaryOps, InverseUmbra) {
  Workspace ws(8);
  EXPECT_TRUE(similar(ws, inverse_umbra(ws, ws.augmentation()), ws.augmentation()));
  const AtomId iu = inverse_umbra(ws, ws.unity());
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(moments(ws, iu)[k], Poly(k % 2 ? -1 : 1));
  SplitMix64 rng(45);
  for (int trial = 0; trial < 5; ++trial) {
    const AtomId a = random_umbra(ws, rng, "a" + std::to_string(trial));
    const AtomId ia = inverse_umbra(ws, a);
    EXPECT_TRUE(ws.similar_to(Expr(a) + Expr(ia), Expr(ws.augmentation())).similar);
    EXPECT_TRUE(similar(ws, inverse_umbra(ws, ia), a));
    EXPECT_TRUE(similar(ws, ia, dot(ws, DotLeft::integer(-1), a)));
  }
}

TEST(AuxiliaryOps, BellUmbra) {
  Workspace ws(10, {"x"});
  const AtomId b = bell_umbra(ws);
  for (int k = 0; k <= 10; ++k) EXPECT_EQ(moments(ws, b)[k], Poly(combinatorics::bell_number(k)));
  EXPECT_EQ(ws.eval(Expr(b), 3), Poly(5));
  EXPECT_TRUE(ws.atom(b).bell_scalar);
  for (int i = 0; i <= 10; ++i) EXPECT_EQ(falling_factorial_moment(ws, b, i), Poly(1)) << i;
  const AtomId xb = bell_umbra(ws, DotLeft::indeterminate("x"));
  for (int i = 0; i <= 10; ++i) EXPECT_EQ(falling_factorial_moment(ws, xb, i), Poly::variable("x").pow(i));
  const auto poisson = oracle::poisson_moments(Rational(3, 2), 10);
  const AtomId b32 = bell_umbra(ws, DotLeft::scalar(Poly(Rational(3, 2))));
  EXPECT_EQ(moments(ws, b32), oracle::polys(poisson));
}

TEST(AuxiliaryOps, PartitionUmbra) {
  Workspace ws(8, {"x"});
  EXPECT_TRUE(similar(ws, partition_umbra(ws, ws.unity()), bell_umbra(ws)));
  SplitMix64 rng(46);
  const AtomId a = random_umbra(ws, rng, "a");
  const auto am = oracle::rationals(moments(ws, a));
  const AtomId pa = partition_umbra(ws, a);
  EXPECT_EQ(moments(ws, pa), oracle::polys(oracle::compound_poisson_moments(Rational(1), am, 8)));
  const AtomId xpa = partition_umbra(ws, a, DotLeft::indeterminate("x"));
  for (int n = 0; n <= 8; ++n) {
    Poly expected;
    std::vector<Poly> tail(moments(ws, a).begin() + 1, moments(ws, a).end());
    for (int k = 0; k <= n; ++k) expected += Poly::variable("x").pow(k) * oracle::partial_bell_by_partitions(n, k, tail);
    EXPECT_EQ(moments(ws, xpa)[n], expected) << n;
    EXPECT_EQ(moments(ws, xpa)[n].substitute("x", Poly(1)), moments(ws, pa)[n]);
  }
  // bell.a is (bell.u).a
  EXPECT_TRUE(similar(ws, pa, dot(ws, DotLeft::umbra(bell_umbra(ws)), a)));
}

TEST(AuxiliaryOps, CompositionUmbra) {
  Workspace ws(8);
  const AtomId cuu = composition_umbra(ws, ws.unity(), ws.unity());
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(moments(ws, cuu)[k], Poly(combinatorics::bell_number(k)));
  SplitMix64 rng(47);
  const AtomId a = random_umbra(ws, rng, "a");
  const AtomId g = random_umbra(ws, rng, "g");
  const AtomId c = composition_umbra(ws, g, a);
  std::vector<Poly> tail(moments(ws, a).begin() + 1, moments(ws, a).end());
  for (int n = 0; n <= 8; ++n) {
    Poly expected;
    for (int k = 0; k <= n; ++k) expected += moments(ws, g)[k] * oracle::partial_bell_by_partitions(n, k, tail);
    EXPECT_EQ(moments(ws, c)[n], expected) << n;
  }
  EXPECT_TRUE(similar(ws, c, dot(ws, DotLeft::umbra(g), partition_umbra(ws, a))));
  EXPECT_TRUE(similar(ws, composition_umbra(ws, ws.unity(), a), partition_umbra(ws, a)));
}

TEST(AuxiliaryOps, AlphaBar) {
  Workspace ws(8);
  const AtomId ub = alpha_bar(ws, ws.unity());
  EXPECT_EQ(ws.atom(ub).order(), 7);
  for (int k = 0; k <= 7; ++k) EXPECT_EQ(moments(ws, ub)[k], Poly(Rational(1, k + 1)));
  SplitMix64 rng(48);
  const AtomId a = random_unital_umbra(ws, rng, "a");
  const AtomId ab = alpha_bar(ws, a);
  const auto& m = moments(ws, a);
  for (int k = 0; k <= 7; ++k) EXPECT_EQ(moments(ws, ab)[k], Poly(m[k + 1].constant_term() / (m[1].constant_term() * (k + 1))));
  // f(t) - 1 = a_1 t exp(t abar)
  const Series lhs = ws.atom(a).egf - Series::constant(Poly(1), 8);
  const Series rhs = (ws.atom(ab).egf.shift_up()) * m[1];
  EXPECT_EQ(lhs, rhs);
  // f(t) - 1 = t e^{-t}: bar is -1.u
  std::vector<Poly> tree{Poly(1)};
  for (int k = 1; k <= 8; ++k) tree.emplace_back(Rational(k % 2 ? k : -k));
  const AtomId tau = ws.define_umbra("tau", tree);
  EXPECT_TRUE(similar(ws, alpha_bar(ws, tau), dot(ws, DotLeft::integer(-1), ws.unity())));
  const AtomId flat = ws.define_umbra("flat", {Poly(1), Poly(0), Poly(1)});
  expect_error(ErrorCode::NonUnitLinearMoment, [&] { alpha_bar(ws, flat); });
}

TEST(AuxiliaryOps, ExponentialAndFactorialMoments) {
  Workspace ws(8);
  SplitMix64 rng(49);
  const AtomId a = random_umbra(ws, rng, "a");
  const AtomId ab = dot(ws, DotLeft::umbra(a), bell_umbra(ws));
  for (int n = 0; n <= 8; ++n) {
    std::vector<Rational> by_blocks(static_cast<std::size_t>(n) + 1);
    for (const auto& p : oracle::set_partitions(n)) by_blocks[p.size()] += 1;
    Poly expected;
    for (int k = 0; k <= n; ++k) expected += moments(ws, a)[k] * by_blocks[k];
    EXPECT_EQ(exponential_umbral_moment(ws, a, n), expected) << n;
    EXPECT_EQ(moments(ws, ab)[n], expected) << n;
  }
  for (int i = 0; i <= 8; ++i) {
    Poly expected;
    const auto s = oracle::falling_factorial_coefficients(i);
    for (int j = 0; j <= i; ++j) expected += moments(ws, a)[j] * s[j];
    EXPECT_EQ(falling_factorial_moment(ws, a, i), expected);
  }
  expect_error(ErrorCode::OrderExceeded, [&] { exponential_umbral_moment(ws, a, 9); });
}

TEST(AuxiliaryOps, EveryConstructorIsCoherent) {
  Workspace ws(10, {"x"});
  SplitMix64 rng(50);
  for (int trial = 0; trial < 5; ++trial) {
    const std::string tag = std::to_string(trial);
    const AtomId a = random_unital_umbra(ws, rng, "a" + tag);
    const AtomId g = random_umbra(ws, rng, "g" + tag);
    const std::vector<AtomId> built{
        dot(ws, DotLeft::integer(3), a),
        dot(ws, DotLeft::integer(-2), a),
        dot(ws, DotLeft::indeterminate("x"), a),
        dot(ws, DotLeft::umbra(g), a),
        point_power(ws, a, 2),
        inverse_umbra(ws, a),
        bell_umbra(ws),
        bell_umbra(ws, DotLeft::indeterminate("x")),
        partition_umbra(ws, a),
        partition_umbra(ws, a, DotLeft::indeterminate("x")),
        composition_umbra(ws, g, a),
        alpha_bar(ws, a),
    };
    for (AtomId id : built) {
      EXPECT_TRUE(ws.atom(id).coherent()) << ws.atom(id).name;
      EXPECT_EQ(ws.atom(id).egf, Series::from_moments(ws.atom(id).moments)) << ws.atom(id).name;
    }
  }
}

TEST(AuxiliaryOps, Names) {
  Workspace ws(4, {"x"});
  const AtomId a = ws.define_umbra("a", {Poly(1), Poly(2), Poly(1), Poly(1), Poly(1)});
  EXPECT_EQ(ws.atom(dot(ws, DotLeft::integer(3), a)).name, names::dot(ws, DotLeft::integer(3), a));
  EXPECT_EQ(ws.atom(bell_umbra(ws)).name, "bell");
  EXPECT_EQ(ws.atom(alpha_bar(ws, a)).name, "bar(a)");
}

}  // namespace
