#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "expect_error.hpp"
#include "oracle.hpp"
#include "umbral/workspace.hpp"

namespace {

using umbral::AtomId;
using umbral::ErrorCode;
using umbral::Expr;
using umbral::Poly;
using umbral::Rational;
using umbral::Series;
using umbral::Workspace;

AtomId random_umbra(Workspace& ws, umbral::SplitMix64& rng, const std::string& name) {
  return ws.define_umbra(name, oracle::polys(oracle::random_moments(rng, ws.order())));
}

TEST(Workspace, BuiltinAtoms) {
  Workspace ws(6);
  for (int n = 0; n <= 6; ++n) {
    EXPECT_EQ(ws.eval(Expr(ws.unity()), n), Poly(1));
    EXPECT_EQ(ws.eval(Expr(ws.augmentation()), n), Poly(n == 0 ? 1 : 0));
  }
  EXPECT_EQ(ws.gf_of(Expr(ws.augmentation())), Series::constant(Poly(1), 6));
  EXPECT_EQ(ws.gf_of(Expr(ws.unity())), Series::exponential(6));
  const auto s = ws.similar_to(Expr(ws.unity()), Expr(ws.augmentation()));
  EXPECT_FALSE(s.similar);
  EXPECT_EQ(s.first_difference, 1);
}

TEST(Workspace, DefineExamples) {
  Workspace ws(5, {"x"});
  const AtomId ones = ws.define_umbra("ones", std::vector<Poly>(6, Poly(1)));
  EXPECT_TRUE(ws.similar_to(Expr(ones), Expr(ws.unity())).similar);
  const AtomId delta = ws.define_umbra("delta", {Poly(1), Poly(0), Poly(0), Poly(0), Poly(0), Poly(0)});
  EXPECT_TRUE(ws.similar_to(Expr(delta), Expr(ws.augmentation())).similar);
  std::vector<Poly> powers;
  for (int k = 0; k <= 5; ++k) powers.push_back(Poly::variable("x").pow(k));
  const AtomId c = ws.define_umbra("c", powers);
  EXPECT_EQ(ws.gf_of(Expr(c)), Series::exponential(5, Poly::variable("x")));

  expect_error(ErrorCode::BadZerothMoment, [&] { ws.define_umbra("bad", {Poly(2), Poly(1)}); });
  expect_error(ErrorCode::DuplicateName, [&] { ws.define_umbra("c", {Poly(1)}); });
  expect_error(ErrorCode::UndeclaredIndeterminate, [&] { ws.define_umbra("d", {Poly(1), Poly::variable("z")}); });
  const AtomId longer = ws.define_umbra("longer", std::vector<Poly>(20, Poly(1)));
  EXPECT_EQ(ws.atom(longer).moments.size(), 6U);
  const AtomId shorter = ws.define_umbra("shorter", {Poly(1), Poly(3)});
  EXPECT_EQ(ws.support_order(Expr(shorter)), 1);
  expect_error(ErrorCode::OrderExceeded, [&] { ws.eval(Expr(shorter), 2); });
}

TEST(Workspace, ClonesAreSimilarAndUncorrelated) {
  Workspace ws(8);
  umbral::SplitMix64 rng(31);
  const AtomId a = random_umbra(ws, rng, "a");
  const AtomId a1 = ws.clone(a);
  const AtomId a2 = ws.clone(a);
  EXPECT_NE(a1, a2);
  EXPECT_EQ(ws.atom(a1).name, "a'");
  EXPECT_EQ(ws.atom(a2).name, "a''");
  const auto& m = ws.atom(a).moments;
  for (int k = 0; k <= 8; ++k) EXPECT_EQ(ws.eval(Expr(a1), k), m[k]);
  EXPECT_EQ(ws.eval(Expr(a) * Expr(a1), 1), m[1] * m[1]);
  EXPECT_EQ(ws.eval(pow(Expr(a), 2), 1), m[2]);
  EXPECT_TRUE(ws.similar_to(Expr(ws.clone(ws.unity())), Expr(ws.unity())).similar);
}

TEST(Workspace, EvalFollowsTheAxioms) {
  Workspace ws(8);
  umbral::SplitMix64 rng(32);
  const AtomId a = random_umbra(ws, rng, "a");
  const AtomId g = random_umbra(ws, rng, "g");
  const AtomId a1 = ws.clone(a);
  const auto am = oracle::rationals(ws.atom(a).moments);
  const auto gm = oracle::rationals(ws.atom(g).moments);
  const auto conv = oracle::binomial_convolution(am, am);
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(ws.eval(Expr(a) + Expr(a1), n), Poly(conv[n]));
  EXPECT_EQ(ws.eval(pow(Expr(a), 2) * pow(Expr(g), 3), 1), Poly(am[2] * gm[3]));
  // (a + a)^n is 2^n a^n, not a convolution.
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(ws.eval(Expr(a) + Expr(a), n), Poly(umbral::pow(Rational(2), n) * am[n]));
}

TEST(Workspace, LinearityAndFactorization) {
  Workspace ws(6, {"x"});
  umbral::SplitMix64 rng(33);
  const AtomId a = random_umbra(ws, rng, "a");
  const AtomId b = random_umbra(ws, rng, "b");
  const AtomId g = random_umbra(ws, rng, "g");
  const Expr e1 = pow(Expr(a), 2) + Expr(b);
  const Expr e2 = Expr(a) * Expr(g);
  const Poly c = Poly::parse("3/2*x - 1");
  EXPECT_EQ(ws.eval(c * e1 + e2, 1), c * ws.eval(e1, 1) + ws.eval(e2, 1));
  const Expr f1 = Expr(a) + Expr(b);
  const Expr f2 = pow(Expr(g), 2);
  EXPECT_EQ(ws.eval(f1 * f2, 1), ws.eval(f1, 1) * ws.eval(f2, 1));
  EXPECT_EQ(ws.gf_of(Expr(a) + Expr(g)), ws.gf_of(Expr(a)) * ws.gf_of(Expr(g)));
  const auto conv = oracle::binomial_convolution(oracle::rationals(ws.atom(a).moments),
                                                 oracle::rationals(ws.atom(g).moments));
  EXPECT_EQ(ws.gf_of(Expr(a) + Expr(g)).moments(), oracle::polys(conv));
}

TEST(Workspace, CloneIdsDoNotMatter) {
  Workspace ws(6);
  umbral::SplitMix64 rng(34);
  const AtomId a = random_umbra(ws, rng, "a");
  const AtomId b = random_umbra(ws, rng, "b");
  const AtomId a1 = ws.clone(a);
  const AtomId a2 = ws.clone(a);
  const Expr left = pow(Expr(a1) + Expr(b), 2) * Expr(a2);
  const Expr right = pow(Expr(a2) + Expr(b), 2) * Expr(a1);
  for (int k = 0; k <= 3; ++k) EXPECT_EQ(ws.eval(left, k), ws.eval(right, k));
  EXPECT_TRUE(ws.similar_to(Expr(a) + Expr(b), Expr(b) + Expr(a)).similar);
}

TEST(Workspace, MaterializeSeversCorrelation) {
  Workspace ws(6);
  umbral::SplitMix64 rng(35);
  const AtomId a = random_umbra(ws, rng, "a");
  const AtomId sum = ws.materialize(Expr(a) + Expr(ws.clone(a)), "s");
  const auto am = oracle::rationals(ws.atom(a).moments);
  EXPECT_EQ(ws.atom(sum).moments, oracle::polys(oracle::binomial_convolution(am, am)));
  EXPECT_EQ(ws.eval(Expr(sum) * Expr(a), 1), ws.atom(sum).moments[1] * ws.atom(a).moments[1]);
  EXPECT_TRUE(ws.atom(sum).egf == Series::from_moments(ws.atom(sum).moments));
}

TEST(Workspace, RegisterRejectsIncoherentAtoms) {
  Workspace ws(4);
  expect_error(ErrorCode::IncoherentAtom, [&] {
    ws.register_atom("bad", {Poly(1), Poly(1), Poly(1), Poly(1), Poly(1)}, Series::constant(Poly(1), 4));
  });
  expect_error(ErrorCode::UnknownAtom, [&] { ws.atom(AtomId{999}); });
  expect_error(ErrorCode::OrderExceeded, [&] { ws.eval(Expr(ws.unity()), 5); });
}

TEST(Workspace, JsonRoundTrip) {
  Workspace ws(5, {"x"});
  ws.define_umbra("a", {Poly(1), Poly::parse("x"), Poly::parse("1/2")});
  ws.define_umbra("b", {Poly(1), Poly(2), Poly(3), Poly(4), Poly(5), Poly(6)});
  const nlohmann::json j = ws.to_json();
  EXPECT_EQ(j.at("order"), 5);
  EXPECT_EQ(j.at("indeterminates"), nlohmann::json::array({"x"}));
  EXPECT_EQ(j.at("umbrae").at("a"), nlohmann::json::array({"1", "x", "1/2"}));
  const Workspace back = Workspace::from_json(j);
  EXPECT_EQ(back.to_json(), j);
  EXPECT_EQ(back.atom(*back.lookup("b")).moments, ws.atom(*ws.lookup("b")).moments);
}

}  // namespace
