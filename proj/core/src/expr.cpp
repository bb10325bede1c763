#include "umbral/expr.hpp"

#include <algorithm>

#include "umbral/error.hpp"

namespace umbral {

struct Expr::Node {
  Kind kind = Kind::Atom;
  AtomId id;
  Poly coeff;
  unsigned exponent = 0;
  std::vector<Expr> children;
};

Expr::Expr(AtomId id) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Atom;
  node->id = id;
  node_ = std::move(node);
}

Expr Expr::scalar(Poly value) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Scalar;
  node->coeff = std::move(value);
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Expr Expr::sum(std::vector<Expr> terms) {
  if (terms.empty()) return scalar(Poly());
  if (terms.size() == 1) return terms.front();
  auto node = std::make_shared<Node>();
  node->kind = Kind::Sum;
  node->children = std::move(terms);
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.empty()) return scalar(Poly(1));
  if (factors.size() == 1) return factors.front();
  auto node = std::make_shared<Node>();
  node->kind = Kind::Product;
  node->children = std::move(factors);
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Expr Expr::scaled(Poly coeff, Expr inner) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::ScalarMul;
  node->coeff = std::move(coeff);
  node->children.push_back(std::move(inner));
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Expr Expr::power(Expr base, unsigned exponent) {
  auto node = std::make_shared<Node>();
  node->kind = Kind::Power;
  node->exponent = exponent;
  node->children.push_back(std::move(base));
  return Expr(std::shared_ptr<const Node>(std::move(node)));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

AtomId Expr::atom_id() const {
  if (node_->kind != Kind::Atom) throw Error(ErrorCode::InvalidArgument, "expression is not an atom");
  return node_->id;
}

const Poly& Expr::coefficient() const {
  if (node_->kind != Kind::Scalar && node_->kind != Kind::ScalarMul) {
    throw Error(ErrorCode::InvalidArgument, "expression carries no coefficient");
  }
  return node_->coeff;
}

unsigned Expr::exponent() const {
  if (node_->kind != Kind::Power) throw Error(ErrorCode::InvalidArgument, "expression is not a power");
  return node_->exponent;
}

std::span<const Expr> Expr::children() const { return node_->children; }

std::vector<AtomId> Expr::support() const {
  std::vector<AtomId> out;
  std::vector<const Expr*> stack{this};
  while (!stack.empty()) {
    const Expr* e = stack.back();
    stack.pop_back();
    if (e->kind() == Kind::Atom) out.push_back(e->node_->id);
    for (const auto& c : e->node_->children) stack.push_back(&c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool Expr::is_scalar() const {
  switch (kind()) {
    case Kind::Atom: return false;
    case Kind::Scalar: return true;
    default:
      return std::all_of(node_->children.begin(), node_->children.end(),
                         [](const Expr& c) { return c.is_scalar(); });
  }
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind) return false;
  switch (x.kind) {
    case Expr::Kind::Atom: return x.id == y.id;
    case Expr::Kind::Scalar: return x.coeff == y.coeff;
    case Expr::Kind::ScalarMul:
      if (!(x.coeff == y.coeff)) return false;
      break;
    case Expr::Kind::Power:
      if (x.exponent != y.exponent) return false;
      break;
    default: break;
  }
  return x.children == y.children;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator*(const Poly& c, const Expr& e) { return Expr::scaled(c, e); }
Expr pow(const Expr& base, unsigned exponent) { return Expr::power(base, exponent); }

}  // namespace umbral
