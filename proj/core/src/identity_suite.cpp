#include "umbral/identity_suite.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <thread>

#include "umbral/auxiliary_ops.hpp"
#include "umbral/combinatorics.hpp"
#include "umbral/error.hpp"
#include "umbral/inversion.hpp"
#include "umbral/rng.hpp"
#include "umbral/workspace.hpp"

namespace umbral {

using nlohmann::json;
using combinatorics::StirlingKind;

namespace {

json moments_json(const std::vector<Poly>& m) {
  json out = json::array();
  for (const auto& p : m) out.push_back(p.to_string());
  return out;
}

std::vector<Poly> random_moments(SplitMix64& rng, int order, bool nonzero = false) {
  std::vector<Poly> m{Poly(1)};
  for (int k = 1; k <= order; ++k) m.emplace_back(nonzero ? small_nonzero_rational(rng) : small_rational(rng));
  return m;
}

std::vector<Poly> random_moments_unit(SplitMix64& rng, int order) {
  auto m = random_moments(rng, order);
  m[1] = Poly(1);
  return m;
}

std::vector<Poly> random_moments_invertible(SplitMix64& rng, int order) {
  auto m = random_moments(rng, order);
  m[1] = Poly(small_nonzero_rational(rng));
  return m;
}

Series one_minus(const Series& f) { return f - Series::constant(Poly(1), f.order()); }

// Accumulates comparisons for one catalog entry.
class Run {
 public:
  Run(const IdentityParams& params, std::string only) : params_(params), only_(std::move(only)), rng_(params.seed) {}

  const IdentityParams& params() const noexcept { return params_; }
  int n() const noexcept { return params_.n; }
  SplitMix64& rng() noexcept { return rng_; }
  int trial = 0;
  json inputs = json::object();

  /// False when a single statement was requested and it is not this one.
  bool wants(const std::string& statement) const { return only_.empty() || only_ == statement; }

  void equal(const std::string& statement, const Poly& lhs, const Poly& rhs, int k = -1) {
    note(statement);
    ++comparisons_;
    if (lhs == rhs) return;
    fail(statement, lhs.to_string(), rhs.to_string(), k);
  }

  void equal_series(const std::string& statement, const Series& lhs, const Series& rhs) {
    note(statement);
    ++comparisons_;
    if (lhs.order() != rhs.order()) {
      fail(statement, "order " + std::to_string(lhs.order()), "order " + std::to_string(rhs.order()), -1);
      return;
    }
    for (int k = 0; k <= lhs.order(); ++k) {
      if (!(lhs[k] == rhs[k])) {
        fail(statement, lhs[k].to_string(), rhs[k].to_string(), k);
        return;
      }
    }
  }

  void equal_moments(const std::string& statement, const std::vector<Poly>& lhs, const std::vector<Poly>& rhs) {
    note(statement);
    ++comparisons_;
    const std::size_t reach = std::min(lhs.size(), rhs.size());
    if (reach == 0) {
      fail(statement, "no moments", "no moments", -1);
      return;
    }
    for (std::size_t k = 0; k < reach; ++k) {
      if (!(lhs[k] == rhs[k])) {
        fail(statement, lhs[k].to_string(), rhs[k].to_string(), static_cast<int>(k));
        return;
      }
    }
  }

  /// Similarity up to the reachable order, which must be at least `min_order`.
  void similar(const std::string& statement, const Workspace& ws, const Expr& a, const Expr& b, int min_order = 1) {
    note(statement);
    ++comparisons_;
    const Similarity s = ws.similar_to(a, b);
    if (!s.similar) {
      const int k = *s.first_difference;
      fail(statement, ws.eval(a, k).to_string(), ws.eval(b, k).to_string(), k);
    } else if (s.checked_order < min_order) {
      fail(statement, "compared only up to " + std::to_string(s.checked_order), "order " + std::to_string(min_order),
           -1);
    }
  }

  void expect(const std::string& statement, bool ok, const std::string& lhs, const std::string& rhs, int k = -1) {
    note(statement);
    ++comparisons_;
    if (!ok) fail(statement, lhs, rhs, k);
  }

  void detail(const std::string& key, json value) { details_[key] = std::move(value); }

  IdentityCase finish(const IdentityDescriptor& d) && {
    IdentityCase c;
    c.id = d.id;
    c.anchor = d.anchor;
    c.counterexample = d.counterexample;
    c.params = params_;
    c.comparisons = comparisons_;
    c.statements = std::move(statements_);
    c.witness = std::move(witness_);
    c.pass = !c.witness.has_value() && comparisons_ > 0;
    c.details = std::move(details_);
    return c;
  }

  bool failed() const noexcept { return witness_.has_value(); }

 private:
  void note(const std::string& statement) {
    if (std::find(statements_.begin(), statements_.end(), statement) == statements_.end()) {
      statements_.push_back(statement);
    }
  }

  void fail(const std::string& statement, std::string lhs, std::string rhs, int k) {
    if (witness_) return;
    json w{{"statement", statement}, {"trial", trial}, {"lhs", std::move(lhs)}, {"rhs", std::move(rhs)},
           {"inputs", inputs}};
    if (k >= 0) w["k"] = k;
    witness_ = std::move(w);
  }

  IdentityParams params_;
  std::string only_;
  SplitMix64 rng_;
  std::size_t comparisons_ = 0;
  std::vector<std::string> statements_;
  std::optional<json> witness_;
  json details_ = json::object();
};

AtomId define(Workspace& ws, Run& r, const std::string& name, std::vector<Poly> moments) {
  r.inputs[name] = moments_json(moments);
  return ws.define_umbra(name, std::move(moments));
}

// An umbra equal to `a` below index j and different at j.
std::vector<Poly> perturbed_at(SplitMix64& rng, std::vector<Poly> a, int j) {
  a[j] += Poly(small_nonzero_rational(rng));
  return a;
}

// n.a, x.a cancellation and the four companion statements, for a left
// operand supplied by `left` (integers or indeterminates).
void point_product_laws(Run& r, bool polynomial) {
  const std::string tag = polynomial ? "cor1_" : "prop1_";
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n(), polynomial ? std::vector<std::string>{"x", "y"} : std::vector<std::string>{});
    auto& rng = r.rng();
    const AtomId a = define(ws, r, "a", random_moments(rng, r.n()));
    const AtomId b = define(ws, r, "b", random_moments(rng, r.n()));
    const long n = rng.between(1, 4);
    const long m = rng.between(0, 4);
    const Rational c = small_nonzero_rational(rng);
    const DotLeft L = polynomial ? DotLeft::indeterminate("x") : DotLeft::integer(n);
    const DotLeft M = polynomial ? DotLeft::indeterminate("y") : DotLeft::integer(m);
    const DotLeft LM = polynomial ? DotLeft::scalar(Poly::variable("x") * Poly::variable("y")) : DotLeft::integer(n * m);
    const DotLeft LplusM =
        polynomial ? DotLeft::scalar(Poly::variable("x") + Poly::variable("y")) : DotLeft::integer(n + m);
    r.inputs["n"] = n;
    r.inputs["m"] = m;
    r.inputs["c"] = to_string(c);

    if (r.wants(tag + "i")) {
      const int j = static_cast<int>(rng.between(1, r.n()));
      const AtomId bj = define(ws, r, "b_" + std::to_string(j), perturbed_at(rng, ws.atom(a).moments, j));
      const Similarity base = ws.similar_to(Expr(a), Expr(bj));
      const Similarity dotted = ws.similar_to(Expr(dot(ws, L, a)), Expr(dot(ws, L, bj)));
      r.expect(tag + "i", !dotted.similar && dotted.first_difference == base.first_difference,
               "first difference " + (dotted.first_difference ? std::to_string(*dotted.first_difference) : "none"),
               "first difference " + std::to_string(j), j);
      r.similar(tag + "i", ws, Expr(dot(ws, L, a)), Expr(dot(ws, L, ws.clone(a))));
    }
    if (r.wants(tag + "ii")) {
      const AtomId ca = ws.materialize(Expr::scaled(Poly(c), Expr(a)), "c*a");
      r.similar(tag + "ii", ws, Expr(dot(ws, L, ca)), Expr::scaled(Poly(c), Expr(dot(ws, L, a))));
    }
    if (r.wants(tag + "iii")) {
      const AtomId nm = dot(ws, L, dot(ws, M, a));
      const AtomId mn = dot(ws, M, dot(ws, L, a));
      const AtomId prod = dot(ws, LM, a);
      r.similar(tag + "iii", ws, Expr(nm), Expr(prod));
      r.similar(tag + "iii", ws, Expr(mn), Expr(prod));
    }
    if (r.wants(tag + "iv")) {
      const AtomId lhs = dot(ws, LplusM, a);
      r.similar(tag + "iv", ws, Expr(lhs), Expr(dot(ws, L, a)) + Expr(dot(ws, M, ws.clone(a))));
    }
    if (r.wants(tag + "v")) {
      const AtomId sum = ws.materialize(Expr(a) + Expr(b), "a + b");
      r.similar(tag + "v", ws, Expr(dot(ws, L, a)) + Expr(dot(ws, L, b)), Expr(dot(ws, L, sum)));
    }
  }
}

void prop1(Run& r) { point_product_laws(r, false); }
void cor1(Run& r) { point_product_laws(r, true); }

void thm1_binomial_type(Run& r) {
  const Poly x = Poly::variable("x");
  const Poly y = Poly::variable("y");
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n(), {"x", "y"});
    const AtomId a = define(ws, r, "a", random_moments(r.rng(), r.n()));
    const auto& q = ws.atom(dot(ws, DotLeft::indeterminate("x"), a)).moments;
    for (int k = 0; k <= r.n(); ++k) {
      Poly rhs;
      for (int i = 0; i <= k; ++i) {
        rhs += q[i] * q[k - i].substitute("x", y) * binomial(static_cast<unsigned>(k), static_cast<unsigned>(i));
      }
      r.equal("binomial type", q[k].substitute("x", x + y), rhs, k);
    }
    // A binomial-type sequence determines the umbra through D_x q_k at 0:
    // sum_k D_x q_k(0) t^k / k! = log f(t).
    std::vector<Poly> slopes;
    for (int k = 0; k <= r.n(); ++k) slopes.push_back(q[k].derivative("x").substitute("x", Poly(0)));
    const Series recovered = exp(Series::from_moments(slopes));
    r.equal_moments("umbra from derivatives at 0", recovered.moments(), ws.atom(a).moments);
  }
}

void abel(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n());
    auto& rng = r.rng();
    const AtomId a = define(ws, r, "a", random_moments(rng, r.n()));
    const AtomId b = define(ws, r, "b", random_moments(rng, r.n()));
    const AtomId g = define(ws, r, "g", random_moments(rng, r.n()));
    // head[k] = E[a (a - k.g)^{k-1}], tail[k] = k.g' as a fresh atom.
    std::vector<Poly> head{Poly(1)};
    std::vector<AtomId> tail{ws.augmentation()};
    for (int k = 1; k <= r.n(); ++k) {
      const AtomId neg = dot(ws, DotLeft::integer(-k), g);
      head.push_back(ws.eval(Expr(a) * pow(Expr(a) + Expr(neg), static_cast<unsigned>(k - 1)), 1));
      tail.push_back(dot(ws, DotLeft::integer(k), ws.clone(g)));
    }
    for (int n = 0; n <= r.n(); ++n) {
      Poly rhs;
      for (int k = 0; k <= n; ++k) {
        rhs += head[k] * ws.eval(Expr(b) + Expr(tail[k]), n - k) *
               binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
      }
      r.equal("Abel expansion", ws.eval(Expr(a) + Expr(b), n), rhs, n);
    }
  }
}

void cor2_right_dist(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n());
    auto& rng = r.rng();
    const AtomId a = define(ws, r, "a", random_moments(rng, r.n()));
    const AtomId b = define(ws, r, "b", random_moments(rng, r.n()));
    const AtomId g = define(ws, r, "g", random_moments(rng, r.n()));
    const AtomId sum = ws.materialize(Expr(a) + Expr(b), "a + b");
    const AtomId lhs = dot(ws, DotLeft::umbra(sum), g);
    const AtomId ag = dot(ws, DotLeft::umbra(a), g);
    const AtomId bg = dot(ws, DotLeft::umbra(b), ws.clone(g));
    r.similar("(a+b).g == a.g + b.g'", ws, Expr(lhs), Expr(ag) + Expr(bg));
    r.equal_series("h^(a+b) = h^a h^b", ws.atom(lhs).egf, ws.atom(ag).egf * ws.atom(bg).egf);
  }
}

void remark1_counterexample(Run& r) {
  const int reach = std::min(r.n(), 4);
  Workspace ws(reach);
  const AtomId a = bell_umbra(ws);
  const AtomId b = ws.clone(a);
  const AtomId g = ws.clone(a);
  const AtomId sum = ws.materialize(Expr(b) + Expr(g), "b + g");
  const Expr lhs(dot(ws, DotLeft::umbra(a), sum));
  const Expr rhs = Expr(dot(ws, DotLeft::umbra(a), b)) + Expr(dot(ws, DotLeft::umbra(ws.clone(a)), g));
  const Similarity s = ws.similar_to(lhs, rhs);
  r.inputs = json{{"a", "bell"}, {"b", "bell"}, {"g", "bell"}};
  json sides = json::array();
  for (int k = 0; k <= reach; ++k) sides.push_back({ws.eval(lhs, k).to_string(), ws.eval(rhs, k).to_string()});
  r.detail("moments_lhs_rhs", sides);
  if (s.first_difference) r.detail("first_difference", *s.first_difference);
  r.expect("a.(b+g) differs from a.b + a'.g", !s.similar && *s.first_difference <= 4, "similar up to " +
           std::to_string(s.checked_order), "a difference at some k <= 4");

  // Random umbrae: how often left distributivity fails as well.
  int dissimilar = 0;
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    Workspace rw(reach);
    auto& rng = r.rng();
    const AtomId x = rw.define_umbra("a", random_moments(rng, reach));
    const AtomId y = rw.define_umbra("b", random_moments(rng, reach));
    const AtomId z = rw.define_umbra("g", random_moments(rng, reach));
    const AtomId yz = rw.materialize(Expr(y) + Expr(z), "b + g");
    const Similarity rs = rw.similar_to(
        Expr(dot(rw, DotLeft::umbra(x), yz)),
        Expr(dot(rw, DotLeft::umbra(x), y)) + Expr(dot(rw, DotLeft::umbra(rw.clone(x)), z)));
    if (!rs.similar) ++dissimilar;
  }
  r.detail("random_dissimilar", dissimilar);
}

void cor3_assoc(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n());
    auto& rng = r.rng();
    const AtomId a = define(ws, r, "a", random_moments(rng, r.n()));
    const AtomId b = define(ws, r, "b", random_moments(rng, r.n()));
    const AtomId g = define(ws, r, "g", random_moments(rng, r.n()));
    const AtomId lhs = dot(ws, DotLeft::umbra(b), dot(ws, DotLeft::umbra(g), a));
    const AtomId rhs = dot(ws, DotLeft::umbra(dot(ws, DotLeft::umbra(b), g)), a);
    r.similar("b.(g.a) == (b.g).a", ws, Expr(lhs), Expr(rhs));
    const Rational c = small_nonzero_rational(rng);
    r.inputs["c"] = to_string(c);
    const AtomId ca = ws.materialize(Expr::scaled(Poly(c), Expr(a)), "c*a");
    r.similar("b.(c a) == c (b.a)", ws, Expr(dot(ws, DotLeft::umbra(b), ca)),
              Expr::scaled(Poly(c), Expr(dot(ws, DotLeft::umbra(b), a))));
  }
}

void prop5_inverse(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n());
    const AtomId a = define(ws, r, "a", random_moments(r.rng(), r.n()));
    const AtomId inv = inverse_umbra(ws, a);
    r.similar("a + inv(a) == eps", ws, Expr(a) + Expr(inv), Expr(ws.augmentation()));
    r.equal_series("f * g = 1", ws.atom(a).egf * ws.atom(inv).egf, Series::constant(Poly(1), r.n()));
    r.similar("inv(inv(a)) == a", ws, Expr(inverse_umbra(ws, inv)), Expr(a));
  }
}

void prop6_neg_dot(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n(), {"x"});
    auto& rng = r.rng();
    const AtomId a = define(ws, r, "a", random_moments(rng, r.n()));
    const long n = rng.between(1, 4);
    r.inputs["n"] = n;
    const AtomId neg = dot(ws, DotLeft::integer(-n), a);
    r.similar("n.a - n.a' == eps", ws, Expr(dot(ws, DotLeft::integer(n), ws.clone(a))) + Expr(neg),
              Expr(ws.augmentation()));
    r.equal_series("e^{(-n.a) t} = f^{-n}", ws.atom(neg).egf, ws.atom(a).egf.pow_int(-n));
    r.similar("-n.a == n.inv(a)", ws, Expr(neg), Expr(dot(ws, DotLeft::integer(n), inverse_umbra(ws, a))));
    const AtomId negx = dot(ws, DotLeft::scalar(-Poly::variable("x")), a);
    r.similar("x.a - x.a' == eps", ws, Expr(dot(ws, DotLeft::indeterminate("x"), ws.clone(a))) + Expr(negx),
              Expr(ws.augmentation()));
  }
}

Expr product_of_clones(Workspace& ws, AtomId a, long n) {
  if (n == 0) return Expr(ws.unity());
  std::vector<Expr> factors;
  for (long i = 0; i < n; ++i) factors.emplace_back(ws.clone(a));
  return Expr::product(std::move(factors));
}

void eq10_point_power(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n());
    auto& rng = r.rng();
    const AtomId a = define(ws, r, "a", random_moments(rng, r.n(), true));
    const AtomId b = define(ws, r, "b", random_moments(rng, r.n()));
    const long n = rng.between(0, 3);
    const long m = rng.between(0, 3);
    const Rational c = small_nonzero_rational(rng);
    r.inputs["n"] = n;
    r.inputs["m"] = m;
    r.inputs["c"] = to_string(c);

    const AtomId an = point_power(ws, a, n);
    std::vector<Poly> expected;
    for (const auto& ak : ws.atom(a).moments) expected.push_back(ak.pow(static_cast<unsigned>(n)));
    r.equal_moments("E[(a^.n)^k] = a_k^n", ws.atom(an).moments, expected);
    r.similar("a^.n == a'a''...", ws, Expr(an), product_of_clones(ws, a, n));

    const AtomId ca = ws.materialize(Expr::scaled(Poly(c), Expr(a)), "c*a");
    if (n > 0) {
      r.similar("(c a)^.n == c^n a^.n", ws, Expr(point_power(ws, ca, n)),
                Expr::scaled(Poly(umbral::pow(c, static_cast<unsigned>(n))), Expr(an)));
    }
    r.similar("(a^.n)^.m == a^.nm", ws, Expr(point_power(ws, an, m)), Expr(point_power(ws, a, n * m)));
    r.similar("a^.(n+m) == a^.n a'^.m", ws, Expr(point_power(ws, a, n + m)),
              Expr(an) * Expr(point_power(ws, ws.clone(a), m)));
    const AtomId inv = point_power(ws, a, -1);
    r.similar("a^.-1 a' == u", ws, Expr(inv) * Expr(ws.clone(a)), Expr(ws.unity()));

    // (a+b)^.n ~ sum_i C(n,i) a^.i b^.(n-i) at the first power.
    const AtomId sum = ws.materialize(Expr(a) + Expr(b), "a + b");
    std::vector<Expr> terms;
    for (long i = 0; i <= n; ++i) {
      terms.push_back(Expr::scaled(Poly(binomial(static_cast<unsigned>(n), static_cast<unsigned>(i))),
                                   Expr(point_power(ws, a, i)) * Expr(point_power(ws, b, n - i))));
    }
    r.equal("(a+b)^.n ~ sum C(n,i) a^.i b^.(n-i)", ws.eval(Expr(point_power(ws, sum, n)), 1),
            ws.eval(Expr::sum(std::move(terms)), 1));
  }
}

void eq11_gf_power(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n(), {"x"});
    auto& rng = r.rng();
    const AtomId a = define(ws, r, "a", random_moments(rng, r.n()));
    const long n = rng.between(0, 4);
    r.inputs["n"] = n;
    const Series fn = ws.atom(a).egf.pow_int(n);
    r.equal_series("e^{(n.a) t} = f^n", ws.atom(dot(ws, DotLeft::integer(n), a)).egf, fn);
    std::vector<Expr> clones;
    for (long i = 0; i < n; ++i) clones.emplace_back(ws.clone(a));
    const Expr sum = n == 0 ? Expr(ws.augmentation()) : Expr::sum(std::move(clones));
    r.equal_series("(e^{a t})^.n = f^n", ws.gf_of(sum), fn);
    const Series fx = ws.atom(dot(ws, DotLeft::indeterminate("x"), a)).egf;
    r.equal_series("e^{(x.a) t} at x = n is f^n", fx.substitute("x", Poly(n)), fn);
  }
}

void eq13_point_exp_series(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n());
    auto& rng = r.rng();
    const AtomId a = define(ws, r, "a", random_moments(rng, r.n()));
    const long n = rng.between(0, 4);
    r.inputs["n"] = n;
    const AtomId na = dot(ws, DotLeft::integer(n), a);
    // Series in s of E[e.^{...}] term by term: sum_k E[p^.k] s^k / k!.
    std::vector<Poly> lhs;
    std::vector<Poly> base;
    for (int k = 0; k <= r.n(); ++k) {
      lhs.push_back(ws.eval(Expr(point_power(ws, na, k)), 1));
      base.push_back(ws.eval(Expr(point_power(ws, a, k)), 1));
    }
    r.equal_series("e.^(n.a) ~ (e.^a)^.n", Series::from_moments(lhs), Series::from_moments(base).pow_int(n));
  }
}

void thm2_bell_recursion(Run& r) {
  Workspace ws(r.n());
  const AtomId b = bell_umbra(ws);
  const Expr beta(b);
  for (int n = 0; n < r.n(); ++n) {
    r.equal("bell^{n+1} ~ (bell + u)^n", ws.eval(beta, n + 1), ws.eval(beta + Expr(ws.unity()), n), n);
  }
  for (int n = 0; n <= r.n(); ++n) {
    r.equal("(bell)_n ~ 1", falling_factorial_moment(ws, b, n), Poly(1), n);
  }
  // p(bell + k.u) ~ (bell)_k p(bell) with p = x^n.
  for (int k = 1; k <= 3; ++k) {
    const AtomId ku = dot(ws, DotLeft::integer(k), ws.unity());
    std::vector<Expr> falling{beta};
    for (int j = 1; j < k; ++j) falling.push_back(beta + Expr::scalar(Poly(-j)));
    for (int n = 0; n + k <= r.n(); ++n) {
      std::vector<Expr> factors = falling;
      factors.push_back(pow(beta, static_cast<unsigned>(n)));
      r.equal("(bell + k.u)^n ~ (bell)_k bell^n", ws.eval(beta + Expr(ku), n),
              ws.eval(Expr::product(std::move(factors)), 1), n);
    }
  }
}

void eq17_derivative(Run& r) {
  Workspace ws(r.n());
  const AtomId b = bell_umbra(ws);
  r.equal_series("D_t e^{bell t} ~ e^{(bell + u) t}", ws.atom(b).egf.derivative(),
                 ws.gf_of(Expr(b) + Expr(ws.unity())).truncate(r.n() - 1));
}

void eq18_bell_gf(Run& r) {
  Workspace ws(r.n());
  const int N = r.n();
  const AtomId b = bell_umbra(ws);
  const Series shifted = one_minus(Series::exponential(N));
  r.equal_series("e^{bell t} = exp(e^t - 1)", ws.atom(b).egf, compose(Series::exponential(N), shifted));
  Series sum(N);
  for (int i = 0; i <= N; ++i) sum += shifted.pow_int(i) * Poly(1 / factorial(static_cast<unsigned>(i)));
  r.equal_series("e^{bell t} = sum_i (e^{u t} - u)^.i / i!", ws.atom(b).egf, sum);
  r.similar("bell == bell.u", ws, Expr(b), Expr(dot(ws, DotLeft::umbra(b), ws.unity())), N);
  for (int n = 0; n <= N; ++n) r.equal("E[bell^n] = B_n", ws.eval(Expr(b), n), Poly(combinatorics::bell_number(n)), n);
}

std::string decimal(const Rational& q) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", q.get_d());
  return buf;
}

void dobinski_scalar(Run& r) {
  Workspace ws(r.n());
  const int N = r.n();
  const AtomId b = bell_umbra(ws);
  json rows = json::array();
  for (int n = 0; n <= N; ++n) {
    const int K = 4 * n + 40;
    // E[(k.u)^n] = k^n, read from the k.u atoms.
    Rational s = 0, e = 0;
    for (int k = 0; k <= K; ++k) {
      const AtomId ku = dot(ws, DotLeft::integer(k), ws.unity());
      const Rational inv_fact = 1 / factorial(static_cast<unsigned>(k));
      s += *ws.atom(ku).moments[n].constant() * inv_fact;
      e += inv_fact;
    }
    // Past K every term is at most half the previous one.
    const Rational next_fact = factorial(static_cast<unsigned>(K + 1));
    const Rational tail_s = 2 * umbral::pow(Rational(K + 1), static_cast<unsigned>(n)) / next_fact;
    const Rational tail_e = 2 / next_fact;
    const Rational lower = s / (e + tail_e);
    const Rational upper = (s + tail_s) / e;
    const Rational width = (upper - lower) / lower;
    const Integer rounded_low = Integer(lower + Rational(1, 2));
    const Integer rounded_high = Integer(upper + Rational(1, 2));
    const Poly bn = ws.eval(Expr(b), n);
    const Rational expected = *bn.constant();
    r.expect("relative bracket width < 1e-6", width < Rational(1, 1000000), decimal(width), "1e-06", n);
    r.expect("bracket contains B_n", lower <= expected && expected <= upper, decimal(lower) + ".." + decimal(upper),
             to_string(expected), n);
    r.expect("bracket rounds to B_n", Rational(rounded_low) == expected && Rational(rounded_high) == expected,
             rounded_low.get_str() + ".." + rounded_high.get_str(), to_string(expected), n);
    rows.push_back({{"n", n}, {"K", K}, {"rounded", rounded_low.get_str()}, {"relative_width", decimal(width)}});
  }
  r.detail("rows", rows);
}

void thm4_phi_is_xbeta(Run& r) {
  Workspace ws(r.n(), {"x"});
  const Poly x = Poly::variable("x");
  const AtomId phi = bell_umbra(ws, DotLeft::indeterminate("x"));
  const AtomId beta = bell_umbra(ws);
  r.similar("phi == x.bell", ws, Expr(phi), Expr(dot(ws, DotLeft::indeterminate("x"), beta)), r.n());
  for (int n = 0; n <= r.n(); ++n) {
    r.equal("(phi)_n ~ x^n", falling_factorial_moment(ws, phi, n), x.pow(static_cast<unsigned>(n)), n);
    r.equal("E[phi^n] = Phi_n(x)", ws.eval(Expr(phi), n), combinatorics::exponential_poly(n, "x"), n);
    r.equal("phi at x = 1 is bell", ws.eval(Expr(phi), n).substitute("x", Poly(1)), ws.eval(Expr(beta), n), n);
  }
  Series sum(r.n());
  const Series shifted = one_minus(Series::exponential(r.n()));
  for (int i = 0; i <= r.n(); ++i) {
    sum += shifted.pow_int(i) * (x.pow(static_cast<unsigned>(i)) / factorial(static_cast<unsigned>(i)));
  }
  r.equal_series("e^{phi t} = sum_i x^i (e^t - 1)^i / i!", ws.atom(phi).egf, sum);
}

void thm5_recursion(Run& r) {
  Workspace ws(r.n(), {"x"});
  const Expr phi(bell_umbra(ws, DotLeft::indeterminate("x")));
  for (int n = 0; n < r.n(); ++n) {
    r.equal("(x.bell)^{n+1} ~ x (x.bell + u)^n", ws.eval(phi, n + 1),
            Poly::variable("x") * ws.eval(phi + Expr(ws.unity()), n), n);
  }
}

void rodrigues(Run& r) {
  Workspace ws(r.n(), {"x"});
  const Expr phi(bell_umbra(ws, DotLeft::indeterminate("x")));
  for (int n = 0; n <= r.n(); ++n) {
    r.equal("D_x (x.bell)^n ~ (x.bell + u)^n - (x.bell)^n", ws.eval(phi, n).derivative("x"),
            ws.eval(phi + Expr(ws.unity()), n) - ws.eval(phi, n), n);
  }
}

void dobinski_polynomial(Run& r) {
  Workspace ws(r.n(), {"x"});
  const AtomId phi = bell_umbra(ws, DotLeft::indeterminate("x"));
  const int J = r.n() + 24;
  std::vector<AtomId> ku;
  for (int k = 0; k <= J; ++k) ku.push_back(dot(ws, DotLeft::integer(k), ws.unity()));
  const auto var = intern_variable("x");
  for (int n = 0; n <= r.n(); ++n) {
    const Poly moment = ws.eval(Expr(phi), n);
    // Coefficient of x^j on both sides of Phi_n(x) e^x = sum_k (k.u)^n x^k / k!.
    std::vector<Rational> coeff(static_cast<std::size_t>(n) + 1);
    for (const auto& [mono, c] : moment.terms()) {
      const unsigned d = mono.empty() ? 0 : mono.front().second;
      if (!mono.empty() && mono.front().first != var) throw Error(ErrorCode::InvalidArgument, "unexpected variable");
      coeff[d] = c;
    }
    for (int j = 0; j <= J; ++j) {
      Rational lhs = 0;
      for (int i = 0; i <= std::min(j, n); ++i) lhs += coeff[i] / factorial(static_cast<unsigned>(j - i));
      const Rational rhs = *ws.atom(ku[j]).moments[n].constant() / factorial(static_cast<unsigned>(j));
      r.equal("[x^j] Phi_n(x) e^x = j^n / j!", Poly(lhs), Poly(rhs), n);
    }
  }
}

void eq22_1_exponential_umbral(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n());
    const AtomId a = define(ws, r, "a", random_moments(r.rng(), r.n()));
    const AtomId ab = dot(ws, DotLeft::umbra(a), bell_umbra(ws));
    for (int n = 0; n <= r.n(); ++n) {
      std::vector<Expr> terms;
      for (int k = 0; k <= n; ++k) {
        terms.push_back(Expr::scaled(Poly(combinatorics::stirling(StirlingKind::Second, n, k)),
                                     pow(Expr(a), static_cast<unsigned>(k))));
      }
      const Poly direct = ws.eval(Expr::sum(std::move(terms)), 1);
      r.equal("Phi_n(a) = sum_k S(n,k) a^k", exponential_umbral_moment(ws, a, n), direct, n);
      r.equal("Phi_n(a) ~ (a.bell)^n", ws.eval(Expr(ab), n), direct, n);
      r.equal("(a.bell)_n ~ a^n", falling_factorial_moment(ws, ab, n), ws.atom(a).moments[n], n);
    }
  }
}

void eq22_3_randomized_gf(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n());
    const AtomId a = define(ws, r, "a", random_moments(r.rng(), r.n()));
    const AtomId ab = dot(ws, DotLeft::umbra(a), bell_umbra(ws));
    r.equal_series("e^{(a.bell) t} = f(e^t - 1)", ws.atom(ab).egf,
                   compose(ws.atom(a).egf, one_minus(Series::exponential(r.n()))));
    r.similar("a.bell == comp(a, u)", ws, Expr(ab), Expr(composition_umbra(ws, a, ws.unity())), r.n());
  }
}

void eq24_partition_gf(Run& r) {
  const Poly x = Poly::variable("x");
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n(), {"x"});
    const AtomId a = define(ws, r, "a", random_moments(r.rng(), r.n()));
    const Series jumps = one_minus(ws.atom(a).egf);
    Series sum(r.n());
    Series xsum(r.n());
    for (int i = 0; i <= r.n(); ++i) {
      const Series term = jumps.pow_int(i) * Poly(1 / factorial(static_cast<unsigned>(i)));
      sum += term;
      xsum += term * x.pow(static_cast<unsigned>(i));
    }
    const AtomId psi = partition_umbra(ws, a);
    r.equal_series("e^{(bell.a) t} ~ sum_i (e^{a t} - u)^.i / i!", ws.atom(psi).egf, sum);
    r.similar("part(a) == bell.a", ws, Expr(psi), Expr(dot(ws, DotLeft::umbra(bell_umbra(ws)), a)), r.n());
    r.equal_series("e^{(x.bell.a) t} ~ sum_i x^i (e^{a t} - u)^.i / i!",
                   ws.atom(partition_umbra(ws, a, DotLeft::indeterminate("x"))).egf, xsum);
  }
  Workspace ws(r.n());
  r.similar("part(u) == bell", ws, Expr(partition_umbra(ws, ws.unity())), Expr(bell_umbra(ws)), r.n());
}

void eq_somma_convolution(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n(), {"x", "y"});
    auto& rng = r.rng();
    const AtomId a = define(ws, r, "a", random_moments(rng, r.n()));
    const AtomId xy = partition_umbra(ws, a, DotLeft::scalar(Poly::variable("x") + Poly::variable("y")));
    const AtomId px = partition_umbra(ws, a, DotLeft::indeterminate("x"));
    const AtomId py = partition_umbra(ws, ws.clone(a), DotLeft::indeterminate("y"));
    r.similar("(x+y).bell.a == x.bell.a + y.bell.a'", ws, Expr(xy), Expr(px) + Expr(py));
    r.equal_series("h_{x+y} = h_x h_y", ws.atom(xy).egf, ws.atom(px).egf * ws.atom(py).egf);

    // Y_n is of binomial type in the moment sequence: the umbra with
    // moments a_i + c_i (i >= 1) has partition moments sum C(n,k) Y_k(a) Y_{n-k}(c).
    const AtomId c = define(ws, r, "c", random_moments(rng, r.n()));
    std::vector<Poly> added{Poly(1)};
    for (int i = 1; i <= r.n(); ++i) added.push_back(ws.atom(a).moments[i] + ws.atom(c).moments[i]);
    const AtomId ac = ws.define_umbra("a_plus_c", added);
    const auto& ya = ws.atom(partition_umbra(ws, a)).moments;
    const auto& yc = ws.atom(partition_umbra(ws, c)).moments;
    const auto& yac = ws.atom(partition_umbra(ws, ac)).moments;
    for (int n = 0; n <= r.n(); ++n) {
      Poly rhs;
      for (int k = 0; k <= n; ++k) rhs += ya[k] * yc[n - k] * binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
      r.equal("Y_n(a + c) = sum C(n,k) Y_k(a) Y_{n-k}(c)", yac[n], rhs, n);
    }
  }
}

void thm6_partition_recursion(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n(), {"x"});
    const AtomId a = define(ws, r, "a", random_moments(r.rng(), r.n()));
    const AtomId a2 = ws.clone(a);
    const Expr psi(partition_umbra(ws, a));
    const Expr xpsi(partition_umbra(ws, a, DotLeft::indeterminate("x")));
    const auto& m = ws.atom(a).moments;
    for (int n = 0; n < r.n(); ++n) {
      r.equal("(bell.a)^{n+1} ~ a'(bell.a + a')^n", ws.eval(psi, n + 1),
              ws.eval(Expr(a2) * pow(psi + Expr(a2), static_cast<unsigned>(n)), 1), n);
      r.equal("(x.bell.a)^{n+1} ~ x a'(x.bell.a + a')^n", ws.eval(xpsi, n + 1),
              Poly::variable("x") * ws.eval(Expr(a2) * pow(xpsi + Expr(a2), static_cast<unsigned>(n)), 1), n);
      std::vector<Poly> jumps(m.begin() + 1, m.end());
      Poly rhs;
      for (int k = 0; k <= n; ++k) {
        rhs += m[n - k + 1] * combinatorics::complete_bell(k, jumps) *
               binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
      }
      r.equal("Y_{n+1} = sum C(n,k) a_{n-k+1} Y_k", combinatorics::complete_bell(n + 1, jumps), rhs, n);
    }
  }
}

void eq28_poly_partition(Run& r) {
  const Poly x = Poly::variable("x");
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n(), {"x"});
    const AtomId a = define(ws, r, "a", random_moments(r.rng(), r.n()));
    const AtomId xpsi = partition_umbra(ws, a, DotLeft::indeterminate("x"));
    std::vector<Poly> jumps(ws.atom(a).moments.begin() + 1, ws.atom(a).moments.end());
    for (int n = 0; n <= r.n(); ++n) {
      Poly rhs = n == 0 ? Poly(1) : Poly(0);
      for (int k = 1; k <= n; ++k) rhs += x.pow(static_cast<unsigned>(k)) * combinatorics::partial_bell(n, k, jumps);
      r.equal("E[(x.bell.a)^n] = sum_k x^k B_{n,k}(a)", ws.atom(xpsi).moments[n], rhs, n);
    }
    r.similar("x.(bell.a) == x.bell.a", ws, Expr(dot(ws, DotLeft::indeterminate("x"), partition_umbra(ws, a))),
              Expr(xpsi), r.n());
    r.similar("(x.bell).a == x.bell.a", ws,
              Expr(dot(ws, DotLeft::umbra(bell_umbra(ws, DotLeft::indeterminate("x"))), a)), Expr(xpsi), r.n());
  }
}

void thm7_composition_recursion(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n());
    auto& rng = r.rng();
    const AtomId g = define(ws, r, "g", random_moments(rng, r.n()));
    const AtomId a = define(ws, r, "a", random_moments(rng, r.n()));
    const Atom& chi = ws.atom(composition_umbra(ws, g, a));
    const auto& gm = ws.atom(g).moments;
    const auto& am = ws.atom(a).moments;
    // E[g chi^m] is the m-th moment of g'[f(t) - 1].
    const int N = r.n();
    const Series joint_series = compose(ws.atom(g).egf.derivative(), one_minus(ws.atom(a).egf).truncate(N - 1));
    const auto table = combinatorics::partial_bell_table(N - 1, std::vector<Poly>(am.begin() + 1, am.end()));
    std::vector<Poly> joint;
    for (int m = 0; m < N; ++m) {
      Poly byparts;
      for (int k = 0; k <= m; ++k) byparts += gm[k + 1] * table[m][k];
      r.equal("E[g chi^m] = sum_k g_{k+1} B_{m,k}(a)", joint_series.egf_moment(m), byparts, m);
      joint.push_back(byparts);
    }
    for (int n = 0; n < N; ++n) {
      Poly rhs;
      for (int i = 0; i <= n; ++i) {
        rhs += joint[i] * am[n - i + 1] * binomial(static_cast<unsigned>(n), static_cast<unsigned>(i));
      }
      r.equal("(g.bell.a)^{n+1} ~ g a'(g.bell.a + a')^n", chi.moments[n + 1], rhs, n);
    }
  }
}

void eq30_composition_moments(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n());
    auto& rng = r.rng();
    const AtomId g = define(ws, r, "g", random_moments(rng, r.n()));
    const AtomId a = define(ws, r, "a", random_moments(rng, r.n()));
    const AtomId chi = composition_umbra(ws, g, a);
    const AtomId bell = bell_umbra(ws);
    r.similar("comp(g, a) == g.(bell.a)", ws, Expr(chi),
              Expr(dot(ws, DotLeft::umbra(g), partition_umbra(ws, a))), r.n());
    r.similar("comp(g, a) == (g.bell).a", ws, Expr(chi),
              Expr(dot(ws, DotLeft::umbra(dot(ws, DotLeft::umbra(g), bell)), a)), r.n());
    r.equal_series("e^{chi t} = g[f(t) - 1]", ws.atom(chi).egf,
                   compose(ws.atom(g).egf, one_minus(ws.atom(a).egf)));
  }
}

void lemma1_partial_bell(Run& r) {
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(r.n());
    const AtomId a = define(ws, r, "a", random_moments_invertible(r.rng(), r.n()));
    const AtomId bar = alpha_bar(ws, a);
    const Atom& atom = ws.atom(a);
    std::vector<Poly> jumps(atom.moments.begin() + 1, atom.moments.end());
    for (int k = 1; k <= r.n(); ++k) {
      const AtomId kbar = dot(ws, DotLeft::integer(k), bar);
      const Poly ak = ws.eval(Expr(point_power(ws, a, k)), 1);
      for (int n = k; n <= r.n(); ++n) {
        const Poly rhs = ak * ws.eval(Expr(kbar), n - k) * binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
        r.equal("B_{n,k}(a) ~ C(n,k) a^.k (k.bar(a))^{n-k}", combinatorics::partial_bell(n, k, jumps), rhs, n);
      }
    }
    const Series lhs = one_minus(atom.egf);
    const Series rhs = ws.atom(bar).egf.shift_up() * atom.moments[1];
    r.equal_series("e^{a t} - u ~ a_1 t e^{bar(a) t}", lhs, rhs);
  }
}

void remark4_stirling_bernoulli(Run& r) {
  Workspace ws(r.n());
  std::vector<Poly> bernoulli;
  for (int n = 0; n <= r.n(); ++n) bernoulli.emplace_back(combinatorics::bernoulli_number(n));
  const AtomId delta = ws.define_umbra("delta", bernoulli);
  r.similar("bar(u) == -1.delta", ws, Expr(alpha_bar(ws, ws.unity())),
            Expr(dot(ws, DotLeft::integer(-1), delta)), r.n() - 1);
  json rows = json::array();
  for (int k = 0; k <= r.n(); ++k) {
    if (r.params().k && *r.params().k != k) continue;
    const AtomId kd = dot(ws, DotLeft::integer(-k), delta);
    for (int n = k; n <= r.n(); ++n) {
      if (r.params().k && n != r.n()) continue;
      const Poly rhs = ws.eval(Expr(kd), n - k) * binomial(static_cast<unsigned>(n), static_cast<unsigned>(k));
      const Rational s = combinatorics::stirling(StirlingKind::Second, n, k);
      r.equal("S(n,k) ~ C(n,k) (-k.delta)^{n-k}", Poly(s), rhs, n);
      if (r.params().k) rows.push_back({{"n", n}, {"k", k}, {"lhs", to_string(s)}, {"rhs", rhs.to_string()}});
    }
  }
  if (r.params().k) r.detail("rows", rows);
}

void thm8_lagrange(Run& r) {
  const int N = r.n();
  auto one_case = [&](Workspace& ws, AtomId a, bool unit) {
    const InversionReport rep = cross_check(ws, a, N);
    r.expect("umbral inverse = series reversion", rep.agree, moments_json(rep.gamma_moments_umbral).dump(),
             moments_json(rep.gamma_moments_oracle).dump());
    r.expect("chi ~ 1, chi^j ~ 0", rep.chi_is_identity, moments_json(rep.chi_moments).dump(), "[1,1,0,...]");
    r.expect("chi^n = sum_k g_k B_{n,k}(a)", rep.partial_bell_expansion_holds, "false", "true");
    r.expect("chi^n ~ sum C(n,k) a^.k g^k (k.bar(a))^{n-k}", rep.lemma_expansion_holds, "false", "true");
    r.expect("chi^n ~ sum C(n,k) chi (chi - k.bar(a))^{k-1} (k.bar(a))^{n-k}", rep.abel_expansion_holds, "false",
             "true");
    r.expect("g[f(t) - 1] = 1 + t", rep.composes_to_identity, "false", "true");
    const AtomId g = revert_umbral(ws, a);
    r.similar("inverse of the inverse == a", ws, Expr(revert_umbral(ws, g)), Expr(a), N);
    if (!unit) return;
    const AtomId bar = alpha_bar(ws, a);
    const AtomId gbar = alpha_bar(ws, g);
    for (int k = 1; k <= N; ++k) {
      const Poly rhs = ws.eval(Expr(dot(ws, DotLeft::integer(-k), bar)), k - 1);
      r.equal("a_1 = 1: g^k ~ (-k.bar(a))^{k-1}", ws.atom(g).moments[k], rhs, k);
      r.equal("k bar(g)^{k-1} ~ (-k.bar(a))^{k-1}", ws.atom(gbar).moments[k - 1] * Rational(k), rhs, k);
    }
  };
  for (r.trial = 0; r.trial < r.params().trials; ++r.trial) {
    r.inputs = json::object();
    Workspace ws(N);
    const bool unit = r.trial % 2 == 0;
    const AtomId a = define(ws, r, "a", unit ? random_moments_unit(r.rng(), N) : random_moments_invertible(r.rng(), N));
    one_case(ws, a, unit);
  }
  // f - 1 = t e^{-t}: a_k = k (-1)^{k-1}, gamma^k = k^{k-1}.
  r.trial = -1;
  r.inputs = json::object();
  Workspace ws(N);
  std::vector<Poly> tree{Poly(1)};
  for (int k = 1; k <= N; ++k) tree.emplace_back(static_cast<long>(k % 2 == 1 ? k : -k));
  const AtomId a = define(ws, r, "tree", tree);
  one_case(ws, a, true);
  const AtomId g = revert_umbral(ws, a);
  for (int k = 1; k <= N; ++k) {
    r.equal("tree function: g^k = k^{k-1}", ws.atom(g).moments[k],
            Poly(umbral::pow(Rational(k), static_cast<unsigned>(k - 1))), k);
  }
}

struct Entry {
  IdentityDescriptor descriptor;
  std::function<void(Run&)> body;
};

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = [] {
    std::vector<Entry> t;
    auto add = [&](std::string id, std::string anchor, std::function<void(Run&)> body, int n = 8, int trials = 10,
                   bool counterexample = false) {
      IdentityParams p;
      p.n = n;
      p.trials = trials;
      p.seed = fnv1a(id) & 0xFFFFFFULL;
      t.push_back({{std::move(id), std::move(anchor), counterexample, p}, std::move(body)});
    };
    add("prop1_i_to_v",
        "n.a == n.b => a == b; n.(c a) == c (n.a); n.(m.a) == (nm).a == m.(n.a); (n+m).a == n.a + m.a'; "
        "n.a + n.b == n.(a+b)",
        prop1);
    add("cor1_i_to_v",
        "x.a == x.b => a == b; x.(c a) == c (x.a); x.(y.a) == (xy).a == y.(x.a); (x+y).a == x.a + y.a'; "
        "x.a + x.b == x.(a+b)",
        cor1);
    add("thm1_binomial_type", "E[((x+y).a)^k] = sum_i C(k,i) E[(x.a)^i] E[(y.a)^{k-i}]", thm1_binomial_type);
    add("abel", "(a+b)^n ~ sum_k C(n,k) a (a - k.g)^{k-1} (b + k.g)^{n-k}", abel);
    add("cor2_right_dist", "(a+b).g == a.g + b.g'", cor2_right_dist);
    add("remark1_left_dist_counterexample", "a.(b+g) is not similar to a.b + a'.g", remark1_counterexample, 4, 10,
        true);
    add("cor3_assoc", "b.(g.a) == (b.g).a", cor3_assoc);
    add("prop5_inverse", "a + inv(a) == eps, e^{inv(a) t} ~ 1/f(t)", prop5_inverse);
    add("prop6_neg_dot", "n.a + (-n).a' == eps, e^{(-n.a) t} ~ f(t)^{-n}", prop6_neg_dot);
    add("eq10_point_power", "E[(a^.n)^k] = a_k^n", eq10_point_power);
    add("eq11_gf_power", "e^{(n.a) t} ~ (e^{a t})^.n = f(t)^n", eq11_gf_power);
    add("eq13_point_exp_series", "e.^(n.a) ~ (e.^a)^.n", eq13_point_exp_series);
    add("thm2_bell_recursion", "bell^{n+1} ~ (bell + u)^n", thm2_bell_recursion, 10, 1);
    add("eq17_derivative", "D_t e^{bell t} ~ e^{(bell + u) t}", eq17_derivative, 10, 1);
    add("eq18_bell_gf", "e^{bell t} ~ e.^(e^{u t} - u) = exp(e^t - 1)", eq18_bell_gf, 10, 1);
    add("dobinski_scalar", "bell^n ~ e.^(-u) sum_k (k.u)^n / k!", dobinski_scalar, 8, 1);
    add("thm4_phi_is_xbeta", "phi == x.bell where (phi)_n ~ x^n", thm4_phi_is_xbeta, 10, 1);
    add("thm5_recursion", "(x.bell)^{n+1} ~ x (x.bell + u)^n", thm5_recursion, 10, 1);
    add("rodrigues", "D_x (x.bell)^n ~ (x.bell + u)^n - (x.bell)^n", rodrigues, 10, 1);
    add("dobinski_polynomial", "(x.bell)^n ~ e^{-x} sum_k (k.u)^n x^k / k!", dobinski_polynomial, 8, 1);
    add("eq22_1_exponential_umbral", "Phi_n(a) = sum_k S(n,k) a^k ~ (a.bell)^n, (a.bell)_n ~ a^n",
        eq22_1_exponential_umbral);
    add("eq22_3_randomized_gf", "e^{(a.bell) t} ~ f(e^t - 1)", eq22_3_randomized_gf);
    add("eq24_partition_gf", "e^{(bell.a) t} ~ e.^(e^{a t} - u)", eq24_partition_gf);
    add("eq_somma_convolution", "(x+y).bell.a == x.bell.a + y.bell.a'", eq_somma_convolution);
    add("thm6_partition_recursion", "(bell.a)^{n+1} ~ a'(bell.a + a')^n", thm6_partition_recursion);
    add("eq28_poly_partition", "E[(x.bell.a)^n] = sum_k x^k B_{n,k}(a)", eq28_poly_partition);
    add("thm7_composition_recursion", "(g.bell.a)^{n+1} ~ g a'(g.bell.a + a')^n", thm7_composition_recursion);
    add("eq30_composition_moments", "(g.bell.a)^n ~ sum_k g^k B_{n,k}(a)", eq30_composition_moments);
    add("lemma1_partial_bell", "B_{n,k}(a) ~ C(n,k) a^.k (k.bar(a))^{n-k}", lemma1_partial_bell, 10);
    add("remark4_stirling_bernoulli", "S(n,k) ~ C(n,k) (-k.delta)^{n-k}", remark4_stirling_bernoulli, 10, 1);
    add("thm8_lagrange", "a^.k g^k ~ (-k.bar(a))^{k-1} when g[f(t) - 1] = 1 + t", thm8_lagrange, 10);
    return t;
  }();
  return table;
}

const std::map<std::string, std::pair<std::string, std::string>>& aliases() {
  static const std::map<std::string, std::pair<std::string, std::string>> table = [] {
    std::map<std::string, std::pair<std::string, std::string>> t;
    for (const char* s : {"i", "ii", "iii", "iv", "v"}) {
      t["prop1_" + std::string(s)] = {"prop1_i_to_v", "prop1_" + std::string(s)};
      t["cor1_" + std::string(s)] = {"cor1_i_to_v", "cor1_" + std::string(s)};
    }
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<IdentityDescriptor>& list_identities() {
  static const std::vector<IdentityDescriptor> list = [] {
    std::vector<IdentityDescriptor> out;
    for (const auto& e : entries()) out.push_back(e.descriptor);
    return out;
  }();
  return list;
}

IdentityCase check(const std::string& id, const IdentityParams& params) {
  std::string target = id;
  std::string only;
  if (auto it = aliases().find(id); it != aliases().end()) {
    target = it->second.first;
    only = it->second.second;
  }
  const auto& table = entries();
  auto it = std::find_if(table.begin(), table.end(), [&](const Entry& e) { return e.descriptor.id == target; });
  if (it == table.end()) throw Error(ErrorCode::UnknownIdentity, "no identity named '" + id + "'");
  if (params.n < 2) throw Error(ErrorCode::InvalidArgument, "identity checks need n >= 2");
  if (params.trials < 1) throw Error(ErrorCode::InvalidArgument, "identity checks need at least one trial");
  Run run(params, only);
  it->body(run);
  IdentityCase c = std::move(run).finish(it->descriptor);
  c.id = id;
  if (c.counterexample) c.details["designed_counterexample"] = true;
  return c;
}

IdentityCase check(const std::string& id) {
  std::string target = id;
  if (auto it = aliases().find(id); it != aliases().end()) target = it->second.first;
  for (const auto& d : list_identities()) {
    if (d.id == target) return check(id, d.defaults);
  }
  throw Error(ErrorCode::UnknownIdentity, "no identity named '" + id + "'");
}

std::vector<IdentityCase> check_all(std::optional<std::uint64_t> seed, unsigned threads) {
  const auto& list = list_identities();
  std::vector<IdentityCase> out(list.size());
  auto run_one = [&](std::size_t i) {
    IdentityParams p = list[i].defaults;
    if (seed) p.seed = *seed;
    out[i] = check(list[i].id, p);
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  if (threads == 1) {
    for (std::size_t i = 0; i < list.size(); ++i) run_one(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::future<void>> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.push_back(std::async(std::launch::async, [&] {
      for (std::size_t i = next++; i < list.size(); i = next++) run_one(i);
    }));
  }
  for (auto& f : workers) f.get();
  return out;
}

bool counts_as_failure(const IdentityCase& c) noexcept { return !c.pass && !c.counterexample; }

json to_json(const IdentityCase& c) {
  json params{{"n", c.params.n}, {"trials", c.params.trials}, {"seed", c.params.seed}};
  if (c.params.k) params["k"] = *c.params.k;
  json out{{"id", c.id},
           {"anchor", c.anchor},
           {"kind", c.counterexample ? "counterexample" : "identity"},
           {"params", params},
           {"result", c.pass ? "pass" : "fail"},
           {"comparisons", c.comparisons},
           {"statements", c.statements},
           {"details", c.details}};
  if (c.witness) out["witness"] = *c.witness;
  return out;
}

}  // namespace umbral
