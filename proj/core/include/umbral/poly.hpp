#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "umbral/rational.hpp"

namespace umbral {

/// Interned indeterminate. Ids are process-wide and only used internally;
/// every rendering orders variables by name so output never depends on the
/// order in which names were first seen.
using VarId = std::uint32_t;

VarId intern_variable(std::string_view name);
const std::string& variable_name(VarId id);

/// Multivariate polynomial over the rationals. This is the coefficient ring
/// of every series and the value ring of every moment; a scalar is the
/// polynomial with no indeterminates.
class Poly {
 public:
  /// Sorted by variable id, exponents strictly positive.
  using Monomial = std::vector<std::pair<VarId, unsigned>>;

  Poly() = default;
  Poly(long constant);  // NOLINT(google-explicit-constructor)
  Poly(const Rational& constant);  // NOLINT(google-explicit-constructor)

  static Poly variable(std::string_view name, unsigned exponent = 1);
  static Poly monomial(const Rational& coeff, Monomial mono);

  /// Accepts sums of products of rationals and identifiers with integer
  /// powers, e.g. "x^2 - 3/2*x*y + 1". Division only by nonzero constants.
  static Poly parse(std::string_view text);

  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_one() const;
  /// The value when the polynomial is constant.
  std::optional<Rational> constant() const;
  Rational constant_term() const;
  /// Exactly one variable to the first power with coefficient one.
  std::optional<std::string> as_variable() const;

  std::vector<std::string> variables() const;
  unsigned total_degree() const;
  std::size_t term_count() const noexcept { return terms_.size(); }
  const std::map<Monomial, Rational>& terms() const noexcept { return terms_; }

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(const Poly& rhs);
  Poly& operator*=(const Rational& rhs);
  Poly& operator/=(const Rational& rhs);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend Poly operator*(Poly lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Poly operator/(Poly lhs, const Rational& rhs) { return lhs /= rhs; }
  Poly operator-() const;

  friend bool operator==(const Poly&, const Poly&) = default;

  Poly pow(unsigned exponent) const;
  /// Replaces every occurrence of `var` by `value`.
  Poly substitute(std::string_view var, const Poly& value) const;
  Poly derivative(std::string_view var) const;

  /// Canonical text: terms by descending degree, variables by name.
  std::string to_string() const;

 private:
  void add_term(const Monomial& mono, const Rational& coeff);

  std::map<Monomial, Rational> terms_;
};

/// x (x-1) ... (x-i+1).
Poly falling_factorial(const Poly& x, unsigned i);

/// Constants serialize as "p/q" strings, other polynomials as a map from
/// monomial text ("1" for the constant) to coefficient strings.
nlohmann::json to_json(const Poly& p);
Poly poly_from_json(const nlohmann::json& j);

}  // namespace umbral
