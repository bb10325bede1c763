#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "umbral/expr.hpp"
#include "umbral/poly.hpp"
#include "umbral/series.hpp"

namespace umbral {

enum class AtomKind { Augmentation, Unity, User, Clone, Derived };

/// A registered umbra: its moments m_0..m_order (m_0 = 1) and the series
/// sum m_k t^k / k!. Both are stored because constructors compute them by
/// different routes; registration rejects atoms where they disagree.
struct Atom {
  AtomId id;
  std::string name;
  std::vector<Poly> moments;
  Series egf;
  AtomKind kind = AtomKind::User;
  /// Falling-factorial moments all equal one.
  bool bell_scalar = false;

  int order() const noexcept { return static_cast<int>(moments.size()) - 1; }
  bool coherent() const;
};

/// Similarity is only decidable up to the orders both sides can reach.
struct Similarity {
  bool similar = true;
  /// Highest power compared.
  int checked_order = -1;
  std::optional<int> first_difference;

  explicit operator bool() const noexcept { return similar; }
};

/// The umbral calculus: the set of atoms, the declared indeterminates and
/// the evaluation functional E. Single writer while atoms are registered,
/// freely shareable once construction is over.
class Workspace {
 public:
  explicit Workspace(int order = kDefaultOrder, std::vector<std::string> indeterminates = {});

  int order() const noexcept { return order_; }
  const std::vector<std::string>& indeterminates() const noexcept { return indeterminates_; }
  void declare_indeterminate(const std::string& name);
  bool is_declared(std::string_view name) const;
  /// UndeclaredIndeterminate if `p` mentions anything not declared.
  void require_declared(const Poly& p) const;

  AtomId augmentation() const noexcept { return AtomId{0}; }
  AtomId unity() const noexcept { return AtomId{1}; }

  /// Registers a user umbra. Moments beyond the workspace order are dropped;
  /// a shorter sequence yields an atom of lower order.
  AtomId define_umbra(const std::string& name, std::vector<Poly> moments);
  /// A fresh atom similar to `source` and uncorrelated with it.
  AtomId clone(AtomId source, std::optional<std::string> name = std::nullopt);
  /// Registers a constructed atom after checking m_0 = 1 and coherence.
  AtomId register_atom(std::string name, std::vector<Poly> moments, Series egf,
                       AtomKind kind = AtomKind::Derived, bool bell_scalar = false);
  /// An atom whose moments are E[e^k]; correlation with e's support is severed.
  AtomId materialize(const Expr& e, std::string name);

  const Atom& atom(AtomId id) const;
  std::size_t size() const noexcept { return atoms_.size(); }

  /// Symbol table used by the expression language.
  std::optional<AtomId> lookup(std::string_view symbol) const;
  void bind(const std::string& symbol, AtomId id);

  /// E[e^k]: expands e^k into a polynomial in the atoms, then replaces each
  /// atom power by the matching moment and multiplies across atoms.
  Poly eval(const Expr& e, int k) const;
  /// E[e^k] for k = 0..max_k.
  std::vector<Poly> moments_of(const Expr& e, int max_k) const;
  /// sum_k E[e^k] t^k / k! up to the lowest order among e's atoms.
  Series gf_of(const Expr& e) const;
  Series gf_of(const Expr& e, int order) const;
  /// Lowest order among the atoms of e (the workspace order for scalars).
  int support_order(const Expr& e) const;

  /// Compares E[a^k] and E[b^k] for every k both sides can reach.
  Similarity similar_to(const Expr& a, const Expr& b) const;

  /// {order, indeterminates, umbrae: {name: [moment strings]}}; only user
  /// umbrae are written.
  nlohmann::json to_json() const;
  static Workspace from_json(const nlohmann::json& j);

 private:
  void require_free_name(const std::string& name) const;

  int order_;
  std::vector<std::string> indeterminates_;
  std::deque<Atom> atoms_;
  std::map<std::string, AtomId, std::less<>> symbols_;
};

}  // namespace umbral
