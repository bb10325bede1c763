#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "umbral/poly.hpp"

namespace umbral {

struct AtomId {
  std::uint32_t value = 0;
  friend auto operator<=>(const AtomId&, const AtomId&) = default;
};

/// Immutable umbral polynomial: a tree over atoms. Copies share structure.
class Expr {
 public:
  enum class Kind { Atom, Scalar, Sum, Product, ScalarMul, Power };

  Expr(AtomId id);  // NOLINT(google-explicit-constructor)

  static Expr atom(AtomId id) { return Expr(id); }
  static Expr scalar(Poly value);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr scaled(Poly coeff, Expr inner);
  static Expr power(Expr base, unsigned exponent);

  Kind kind() const noexcept;
  AtomId atom_id() const;
  /// Scalar value or ScalarMul coefficient.
  const Poly& coefficient() const;
  unsigned exponent() const;
  /// Sum terms, Product factors, or the single operand of ScalarMul/Power.
  std::span<const Expr> children() const;

  /// Distinct atoms, ascending.
  std::vector<AtomId> support() const;
  bool is_scalar() const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator*(const Poly& c, const Expr& e);
Expr pow(const Expr& base, unsigned exponent);

}  // namespace umbral
