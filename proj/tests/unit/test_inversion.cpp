#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "expect_error.hpp"
#include "frozen.hpp"
#include "oracle.hpp"
#include "umbral/auxiliary_ops.hpp"
#include "umbral/inversion.hpp"

namespace {

using namespace umbral;

AtomId random_unital_umbra(Workspace& ws, SplitMix64& rng, const std::string& name) {
  auto m = oracle::random_moments(rng, ws.order());
  m[1] = small_nonzero_rational(rng);
  return ws.define_umbra(name, oracle::polys(m));
}

TEST(Inversion, TreeUmbra) {
  Workspace ws(10);
  // f(t) = 1 + t e^{-t}: its compositional inverse counts rooted trees.
  const AtomId a = dot(ws, DotLeft::integer(-1), ws.unity());
  std::vector<Poly> m{Poly(1)};
  for (int k = 1; k <= 10; ++k) m.push_back(Poly(Rational(k)) * ws.atom(a).moments[k - 1]);
  const AtomId f = ws.define_umbra("f", m);
  const AtomId g = revert_umbral(ws, f);
  for (int k = 1; k <= 10; ++k) EXPECT_EQ(ws.atom(g).moments[k], Poly(pow(Rational(k), k - 1))) << k;
  EXPECT_TRUE(cross_check(ws, f, 10).ok());
}

TEST(Inversion, IdentityIsSelfInverse) {
  Workspace ws(8);
  const AtomId id = ws.define_umbra("id", {Poly(1), Poly(1), Poly(0), Poly(0), Poly(0), Poly(0), Poly(0), Poly(0), Poly(0)});
  EXPECT_TRUE(ws.similar_to(Expr(revert_umbral(ws, id)), Expr(id)).similar);
  EXPECT_TRUE(ws.similar_to(Expr(revert_oracle(ws, id)), Expr(id)).similar);
}

TEST(Inversion, FrozenReversion) {
  Workspace ws(8);
  std::vector<Poly> m{Poly(1)};
  for (std::size_t k = 1; k < frozen::reversion_input.size(); ++k) m.emplace_back(frozen::reversion_input[k]);
  const AtomId a = ws.define_umbra("a", m);
  const AtomId g = revert_umbral(ws, a);
  for (int k = 1; k <= 8; ++k) EXPECT_EQ(ws.atom(g).moments[k], Poly(frozen::reversion_moments[k])) << k;
}

TEST(Inversion, UmbralAgreesWithOracleOnRandomUmbrae) {
  Workspace ws(10);
  SplitMix64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const AtomId a = random_unital_umbra(ws, rng, "a" + std::to_string(trial));
    const AtomId g = revert_umbral(ws, a);
    const AtomId o = revert_oracle(ws, a);
    EXPECT_EQ(ws.atom(g).moments, ws.atom(o).moments) << trial;
    // Independent fixed-point reversion of the ordinary coefficients.
    auto f = oracle::to_ogf(oracle::rationals(ws.atom(a).moments));
    f[0] = 0;
    auto r = oracle::to_moments(oracle::ogf_revert(f));
    r[0] = 1;
    EXPECT_EQ(oracle::rationals(ws.atom(g).moments), r) << trial;
    // Reverting twice gives a back.
    EXPECT_TRUE(ws.similar_to(Expr(revert_umbral(ws, g)), Expr(a)).similar) << trial;
    if (trial < 5) {
      const InversionReport report = cross_check(ws, a, 10);
      EXPECT_TRUE(report.ok()) << to_json(report).dump();
      EXPECT_EQ(report.chi_moments[1], Poly(1));
      for (int k = 2; k <= 10; ++k) EXPECT_EQ(report.chi_moments[k], Poly(0));
    }
  }
}

TEST(Inversion, Errors) {
  Workspace ws(4);
  const AtomId flat = ws.define_umbra("flat", {Poly(1), Poly(0), Poly(1), Poly(1), Poly(1)});
  expect_error(ErrorCode::NonUnitLinearMoment, [&] { revert_umbral(ws, flat); });
  expect_error(ErrorCode::NonUnitLinearMoment, [&] { revert_oracle(ws, flat); });
  SplitMix64 rng(62);
  const AtomId a = random_unital_umbra(ws, rng, "a");
  expect_error(ErrorCode::OrderExceeded, [&] { cross_check(ws, a, 5); });
}

TEST(Inversion, ReportJson) {
  Workspace ws(6);
  SplitMix64 rng(63);
  const AtomId a = random_unital_umbra(ws, rng, "a");
  const nlohmann::json j = to_json(cross_check(ws, a, 6));
  EXPECT_EQ(j.at("order"), 6);
  EXPECT_TRUE(j.at("agree").get<bool>());
  EXPECT_EQ(j.at("chi_moments")[1], "1");
}

}  // namespace
