#include "umbral/auxiliary_ops.hpp"

#include <algorithm>
#include <cctype>

#include "umbral/combinatorics.hpp"
#include "umbral/error.hpp"

namespace umbral {

using combinatorics::StirlingKind;

namespace {

bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Index just past the parenthesis group opening at `open`, or npos.
std::size_t close_of(const std::string& s, std::size_t open) {
  int depth = 0;
  for (std::size_t i = open; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    else if (s[i] == ')' && --depth == 0) return i + 1;
  }
  return std::string::npos;
}

// A single token to the expression grammar: ident, ident(...), or (...),
// optionally followed by clone primes.
bool is_atomic(const std::string& s) {
  std::size_t end = s.size();
  while (end > 0 && s[end - 1] == '\'') --end;
  if (end == 0) return false;
  std::size_t i = 0;
  if (std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_') {
    while (i < end && is_ident_char(s[i])) ++i;
    if (i == end) return true;
  }
  if (s[i] != '(') return false;
  return close_of(s, i) == end;
}

std::vector<Poly> jump_moments(const Atom& a, int order) {
  return {a.moments.begin() + 1, a.moments.begin() + 1 + order};
}

// sum_{i=0..k} L_i B_{k,i} for k = 0..order.
std::vector<Poly> bell_transform(const std::vector<std::vector<Poly>>& table, const std::vector<Poly>& weights) {
  std::vector<Poly> out(table.size());
  for (std::size_t k = 0; k < table.size(); ++k) {
    Poly acc;
    for (std::size_t i = 0; i <= k; ++i) {
      if (!table[k][i].is_zero() && !weights[i].is_zero()) acc += weights[i] * table[k][i];
    }
    out[k] = std::move(acc);
  }
  return out;
}

Poly dot_left_scalar(const DotLeft& left) {
  if (const long* n = std::get_if<long>(&left.value)) return Poly(*n);
  if (const Poly* p = std::get_if<Poly>(&left.value)) return *p;
  throw Error(ErrorCode::InvalidArgument, "an umbra cannot scale a Bell or partition umbra");
}

Rational require_unit(const Poly& a1, const std::string& who) {
  auto c = a1.constant();
  if (!c || *c == 0) {
    throw Error(ErrorCode::NonUnitLinearMoment, "first moment of '" + who + "' is " + a1.to_string() +
                                                    ", which has no reciprocal");
  }
  return *c;
}

}  // namespace

std::string operand_name(const Workspace& ws, AtomId id) {
  const std::string& n = ws.atom(id).name;
  return is_atomic(n) ? n : "(" + n + ")";
}

std::string dot_left_name(const Workspace& ws, const DotLeft& left) {
  if (const long* n = std::get_if<long>(&left.value)) {
    return *n < 0 ? "(" + std::to_string(*n) + ")" : std::to_string(*n);
  }
  if (const Poly* p = std::get_if<Poly>(&left.value)) {
    if (auto v = p->as_variable()) return *v;
    auto c = p->constant();
    if (c && *c >= 0 && is_integer(*c)) return umbral::to_string(*c);
    return "(" + p->to_string() + ")";
  }
  return operand_name(ws, std::get<AtomId>(left.value));
}

namespace names {

std::string dot(const Workspace& ws, const DotLeft& left, AtomId alpha) {
  return dot_left_name(ws, left) + "." + operand_name(ws, alpha);
}

std::string point_power(const Workspace& ws, AtomId alpha, long n) {
  return operand_name(ws, alpha) + "^." + std::to_string(n);
}

std::string inverse(const Workspace& ws, AtomId alpha) { return "inv(" + ws.atom(alpha).name + ")"; }

std::string bell(const Workspace& ws, const std::optional<DotLeft>& scale) {
  if (!scale) return "bell";
  std::string s = dot_left_name(ws, *scale);
  if (s.front() == '(' && s.back() == ')' && close_of(s, 0) == s.size()) s = s.substr(1, s.size() - 2);
  return "bell(" + s + ")";
}

std::string partition(const Workspace& ws, AtomId alpha, const std::optional<DotLeft>& scale) {
  if (!scale) return "part(" + ws.atom(alpha).name + ")";
  std::string s = dot_left_name(ws, *scale);
  if (s.front() == '(' && s.back() == ')' && close_of(s, 0) == s.size()) s = s.substr(1, s.size() - 2);
  return "part(" + ws.atom(alpha).name + ", " + s + ")";
}

std::string composition(const Workspace& ws, AtomId gamma, AtomId alpha) {
  return "comp(" + ws.atom(gamma).name + ", " + ws.atom(alpha).name + ")";
}

std::string alpha_bar(const Workspace& ws, AtomId alpha) { return "bar(" + ws.atom(alpha).name + ")"; }

}  // namespace names

AtomId dot(Workspace& ws, const DotLeft& left, AtomId alpha, std::optional<std::string> name) {
  const Atom& a = ws.atom(alpha);
  int order = a.order();
  std::vector<Poly> weights;
  Series egf(0);

  if (const long* n = std::get_if<long>(&left.value)) {
    for (int i = 0; i <= order; ++i) {
      weights.emplace_back(falling_factorial(Poly(*n), static_cast<unsigned>(i)));
    }
    egf = a.egf.pow_int(*n);
  } else if (const Poly* p = std::get_if<Poly>(&left.value)) {
    ws.require_declared(*p);
    for (int i = 0; i <= order; ++i) weights.push_back(falling_factorial(*p, static_cast<unsigned>(i)));
    egf = exp(log(a.egf) * *p);
  } else {
    const Atom& b = ws.atom(std::get<AtomId>(left.value));
    order = std::min(order, b.order());
    for (int i = 0; i <= order; ++i) {
      weights.push_back(b.bell_scalar ? Poly(1) : falling_factorial_moment(ws, b.id, i));
    }
    egf = compose(b.egf.truncate(order), log(a.egf.truncate(order)));
  }

  const auto table = combinatorics::partial_bell_table(order, jump_moments(a, order));
  auto moments = bell_transform(table, weights);
  std::string chosen = name ? *name : names::dot(ws, left, alpha);
  return ws.register_atom(std::move(chosen), std::move(moments), std::move(egf));
}

AtomId point_power(Workspace& ws, AtomId alpha, long n, std::optional<std::string> name) {
  const Atom& a = ws.atom(alpha);
  std::vector<Poly> moments;
  moments.reserve(a.moments.size());
  for (int k = 0; k <= a.order(); ++k) {
    const Poly& m = a.moments[k];
    if (n >= 0) {
      moments.push_back(m.pow(static_cast<unsigned>(n)));
      continue;
    }
    if (m.is_zero()) {
      throw Error(ErrorCode::ZeroMomentReciprocal,
                  "moment " + std::to_string(k) + " of '" + a.name + "' is zero");
    }
    auto c = m.constant();
    if (!c) throw Error(ErrorCode::NotInvertible, "moment " + m.to_string() + " has no reciprocal");
    moments.emplace_back(umbral::pow(1 / *c, static_cast<unsigned>(-n)));
  }
  Series egf = Series::from_moments(moments);
  std::string chosen = name ? *name : names::point_power(ws, alpha, n);
  return ws.register_atom(std::move(chosen), std::move(moments), std::move(egf));
}

AtomId inverse_umbra(Workspace& ws, AtomId alpha, std::optional<std::string> name) {
  const Atom& a = ws.atom(alpha);
  const int order = a.order();
  std::vector<Poly> weights;
  for (int i = 0; i <= order; ++i) {
    Rational w = factorial(static_cast<unsigned>(i));
    weights.emplace_back(i % 2 == 0 ? w : Rational(-w));
  }
  const auto table = combinatorics::partial_bell_table(order, jump_moments(a, order));
  auto moments = bell_transform(table, weights);
  std::string chosen = name ? *name : names::inverse(ws, alpha);
  return ws.register_atom(std::move(chosen), std::move(moments), a.egf.reciprocal());
}

AtomId bell_umbra(Workspace& ws, const std::optional<DotLeft>& scale, std::optional<std::string> name) {
  const int order = ws.order();
  const Series shifted_exp = Series::exponential(order) - Series::constant(Poly(1), order);
  std::vector<Poly> moments;
  Series egf(0);
  bool scalar_bell = false;
  if (!scale) {
    for (int k = 0; k <= order; ++k) moments.emplace_back(combinatorics::bell_number(k));
    egf = exp(shifted_exp);
    scalar_bell = true;
  } else {
    const Poly x = dot_left_scalar(*scale);
    ws.require_declared(x);
    for (int k = 0; k <= order; ++k) {
      Poly phi;
      Poly power(1);
      for (int j = 0; j <= k; ++j) {
        phi += power * combinatorics::stirling(StirlingKind::Second, k, j);
        power *= x;
      }
      moments.push_back(std::move(phi));
    }
    egf = exp(shifted_exp * x);
  }
  std::string chosen = name ? *name : names::bell(ws, scale);
  return ws.register_atom(std::move(chosen), std::move(moments), std::move(egf), AtomKind::Derived, scalar_bell);
}

AtomId partition_umbra(Workspace& ws, AtomId alpha, const std::optional<DotLeft>& scale,
                       std::optional<std::string> name) {
  const Atom& a = ws.atom(alpha);
  const int order = a.order();
  const Series jumps = a.egf - Series::constant(Poly(1), order);
  Poly x(1);
  if (scale) {
    x = dot_left_scalar(*scale);
    ws.require_declared(x);
  }
  std::vector<Poly> weights;
  Poly power(1);
  for (int i = 0; i <= order; ++i) {
    weights.push_back(power);
    power *= x;
  }
  const auto table = combinatorics::partial_bell_table(order, jump_moments(a, order));
  auto moments = bell_transform(table, weights);
  Series egf = scale ? exp(jumps * x) : exp(jumps);
  std::string chosen = name ? *name : names::partition(ws, alpha, scale);
  return ws.register_atom(std::move(chosen), std::move(moments), std::move(egf));
}

AtomId composition_umbra(Workspace& ws, AtomId gamma, AtomId alpha, std::optional<std::string> name) {
  const Atom& g = ws.atom(gamma);
  const Atom& a = ws.atom(alpha);
  const int order = std::min(g.order(), a.order());
  std::vector<Poly> weights(g.moments.begin(), g.moments.begin() + order + 1);
  const auto table = combinatorics::partial_bell_table(order, jump_moments(a, order));
  auto moments = bell_transform(table, weights);
  const Series inner = a.egf.truncate(order) - Series::constant(Poly(1), order);
  Series egf = compose(g.egf.truncate(order), inner);
  std::string chosen = name ? *name : names::composition(ws, gamma, alpha);
  return ws.register_atom(std::move(chosen), std::move(moments), std::move(egf));
}

AtomId alpha_bar(Workspace& ws, AtomId alpha, std::optional<std::string> name) {
  const Atom& a = ws.atom(alpha);
  if (a.order() < 1) throw Error(ErrorCode::OrderExceeded, "'" + a.name + "' has no first moment");
  const Rational a1 = require_unit(a.moments[1], a.name);
  const int order = a.order() - 1;
  std::vector<Poly> moments;
  for (int n = 0; n <= order; ++n) moments.push_back(a.moments[n + 1] / (a1 * (n + 1)));
  // (f - 1) / (a_1 t)
  Series egf = (a.egf - Series::constant(Poly(1), a.order())).shift_down() * Poly(1 / a1);
  std::string chosen = name ? *name : names::alpha_bar(ws, alpha);
  return ws.register_atom(std::move(chosen), std::move(moments), std::move(egf));
}

Poly exponential_umbral_moment(const Workspace& ws, AtomId alpha, int n) {
  const Atom& a = ws.atom(alpha);
  if (n < 0 || n > a.order()) {
    throw Error(ErrorCode::OrderExceeded, "moment " + std::to_string(n) + " of '" + a.name + "' is unknown");
  }
  Poly out;
  for (int k = 0; k <= n; ++k) out += a.moments[k] * combinatorics::stirling(StirlingKind::Second, n, k);
  return out;
}

Poly falling_factorial_moment(const Workspace& ws, AtomId beta, int i) {
  const Atom& b = ws.atom(beta);
  if (i < 0 || i > b.order()) {
    throw Error(ErrorCode::OrderExceeded, "factorial moment " + std::to_string(i) + " of '" + b.name + "'");
  }
  Poly out;
  for (int j = 0; j <= i; ++j) out += b.moments[j] * combinatorics::stirling(StirlingKind::FirstSigned, i, j);
  return out;
}

}  // namespace umbral
