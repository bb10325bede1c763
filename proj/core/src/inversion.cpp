#include "umbral/inversion.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "umbral/auxiliary_ops.hpp"
#include "umbral/combinatorics.hpp"
#include "umbral/error.hpp"

namespace umbral {

namespace {

Rational linear_moment(const Atom& a) {
  if (a.order() < 1) throw Error(ErrorCode::NonUnitLinearMoment, "'" + a.name + "' has no first moment");
  auto c = a.moments[1].constant();
  if (!c || *c == 0) {
    throw Error(ErrorCode::NonUnitLinearMoment,
                "first moment of '" + a.name + "' is " + a.moments[1].to_string() + ", which has no reciprocal");
  }
  return *c;
}

// Series of abar, (f - 1) / (a_1 t), one order below f.
Series bar_series(const Atom& a, const Rational& a1) {
  return (a.egf - Series::constant(Poly(1), a.order())).shift_down() * Poly(1 / a1);
}

std::vector<Poly> bar_moments(const Atom& a, const Rational& a1) {
  std::vector<Poly> out;
  for (int n = 0; n < a.order(); ++n) out.push_back(a.moments[n + 1] / (a1 * (n + 1)));
  return out;
}

std::string unused_name(const Workspace& ws, std::string base) {
  auto taken = [&](const std::string& n) {
    if (ws.lookup(n)) return true;
    for (std::uint32_t i = 0; i < ws.size(); ++i) {
      if (ws.atom(AtomId{i}).name == n) return true;
    }
    return false;
  };
  while (taken(base)) base += "'";
  return base;
}

}  // namespace

AtomId revert_umbral(Workspace& ws, AtomId alpha, std::optional<std::string> name) {
  const Atom& a = ws.atom(alpha);
  const Rational a1 = linear_moment(a);
  const int order = a.order();
  const Series bar = bar_series(a, a1);
  const std::vector<Poly> bar_m = bar_moments(a, a1);
  const auto table = combinatorics::partial_bell_table(order - 1, std::span<const Poly>(bar_m).subspan(1));

  std::vector<Poly> moments{Poly(1)};
  std::vector<Poly> coeffs{Poly(1)};
  for (int k = 1; k <= order; ++k) {
    const Rational scale = 1 / umbral::pow(a1, static_cast<unsigned>(k));
    // E[(-k.abar)^{k-1}] = sum_i (-k)_i B_{k-1,i}(abar)
    Poly moment;
    for (int i = 0; i <= k - 1; ++i) {
      moment += falling_factorial(Poly(-k), static_cast<unsigned>(i)) * table[k - 1][i];
    }
    moments.push_back(moment * scale);
    // (k-1)! [t^{k-1}] EGF(abar)^{-k}, stored as an ordinary coefficient of t^k
    const Series p = bar.pow_int(-k);
    coeffs.push_back(p[k - 1] * (scale / k));
  }
  Series egf = Series::make(std::move(coeffs), order);
  std::string chosen = name ? *name : unused_name(ws, "rev(" + a.name + ")");
  return ws.register_atom(std::move(chosen), std::move(moments), std::move(egf));
}

AtomId revert_oracle(Workspace& ws, AtomId alpha, std::optional<std::string> name) {
  const Atom& a = ws.atom(alpha);
  linear_moment(a);
  const int order = a.order();
  Series egf = Series::constant(Poly(1), order) + revert(a.egf - Series::constant(Poly(1), order));
  auto moments = egf.moments();
  std::string chosen = name ? *name : unused_name(ws, "revo(" + a.name + ")");
  return ws.register_atom(std::move(chosen), std::move(moments), std::move(egf));
}

InversionReport cross_check(const Workspace& ws, AtomId alpha, int order) {
  const Atom& source = ws.atom(alpha);
  if (order < 1 || order > source.order()) {
    throw Error(ErrorCode::OrderExceeded, "inversion order " + std::to_string(order) + " outside 1.." +
                                              std::to_string(source.order()));
  }
  Workspace scratch = ws;
  std::vector<Poly> truncated(source.moments.begin(), source.moments.begin() + order + 1);
  const AtomId a_id = scratch.register_atom(unused_name(scratch, source.name + "_"), truncated,
                                            Series::from_moments(truncated));
  const Atom& a = scratch.atom(a_id);
  const Rational a1 = linear_moment(a);

  InversionReport r;
  r.order = order;
  const AtomId g_id = revert_umbral(scratch, a_id);
  const AtomId o_id = revert_oracle(scratch, a_id);
  r.gamma_moments_umbral = scratch.atom(g_id).moments;
  r.gamma_moments_oracle = scratch.atom(o_id).moments;
  r.agree = r.gamma_moments_umbral == r.gamma_moments_oracle;

  const Atom& g = scratch.atom(g_id);
  const AtomId chi_id = composition_umbra(scratch, g_id, a_id);
  r.chi_moments = scratch.atom(chi_id).moments;
  r.chi_is_identity = true;
  for (int j = 0; j <= order; ++j) {
    const Poly expected = j <= 1 ? Poly(1) : Poly(0);
    if (!(r.chi_moments[j] == expected)) r.chi_is_identity = false;
  }

  const Series one = Series::constant(Poly(1), order);
  r.composes_to_identity = compose(g.egf, a.egf - one) == one + Series::identity(order);

  // Term-by-term partial Bell expansion of chi^n.
  std::vector<Poly> jumps(a.moments.begin() + 1, a.moments.end());
  const auto table = combinatorics::partial_bell_table(order, jumps);
  r.partial_bell_expansion_holds = true;
  for (int n = 0; n <= order; ++n) {
    Poly sum;
    for (int k = 0; k <= n; ++k) sum += g.moments[k] * table[n][k];
    if (!(sum == r.chi_moments[n])) r.partial_bell_expansion_holds = false;
  }

  // B_{n,k}(a) = C(n,k) a_1^k E[(k.abar)^{n-k}], with the moments of k.abar
  // read from EGF(abar)^k and those of -k.abar from EGF(abar)^{-k}.
  const Series bar = bar_series(a, a1);
  std::vector<Series> plus{Series::constant(Poly(1), bar.order())};
  std::vector<Series> minus{plus.front()};
  for (int k = 1; k <= order; ++k) {
    plus.push_back(bar.pow_int(k));
    minus.push_back(bar.pow_int(-k));
  }
  r.lemma_expansion_holds = true;
  for (int n = 1; n <= order; ++n) {
    Poly sum;
    for (int k = 1; k <= n; ++k) {
      sum += g.moments[k] * plus[k].egf_moment(n - k) * (binomial(n, k) * umbral::pow(a1, static_cast<unsigned>(k)));
    }
    if (!(sum == r.chi_moments[n])) r.lemma_expansion_holds = false;
  }

  // Abel: chi^n = sum_k C(n,k) chi (chi - k.abar)^{k-1} (k.abar)^{n-k}; the
  // k = 0 term reduces to E[eps^n].
  r.abel_expansion_holds = true;
  for (int n = 0; n <= order; ++n) {
    Poly sum = n == 0 ? Poly(1) : Poly(0);
    for (int k = 1; k <= n; ++k) {
      Poly head;
      for (int j = 0; j <= k - 1; ++j) {
        head += r.chi_moments[j + 1] * minus[k].egf_moment(k - 1 - j) * binomial(k - 1, j);
      }
      sum += head * plus[k].egf_moment(n - k) * binomial(n, k);
    }
    if (!(sum == r.chi_moments[n])) r.abel_expansion_holds = false;
  }
  return r;
}

nlohmann::json to_json(const InversionReport& r) {
  auto list = [](const std::vector<Poly>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : v) out.push_back(to_json(p));
    return out;
  };
  return {{"order", r.order},
          {"gamma_moments_umbral", list(r.gamma_moments_umbral)},
          {"gamma_moments_oracle", list(r.gamma_moments_oracle)},
          {"agree", r.agree},
          {"chi_moments", list(r.chi_moments)},
          {"chi_is_identity", r.chi_is_identity},
          {"partial_bell_expansion_holds", r.partial_bell_expansion_holds},
          {"lemma_expansion_holds", r.lemma_expansion_holds},
          {"abel_expansion_holds", r.abel_expansion_holds},
          {"composes_to_identity", r.composes_to_identity}};
}

}  // namespace umbral
