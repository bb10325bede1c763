#include "umbral/workspace.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "umbral/error.hpp"

namespace umbral {

namespace {

// Polynomial in atom symbols: sorted (atom, exponent) pairs to coefficient.
using AtomMonomial = std::vector<std::pair<std::uint32_t, unsigned>>;
using NormalForm = std::map<AtomMonomial, Poly>;

AtomMonomial multiply(const AtomMonomial& a, const AtomMonomial& b) {
  AtomMonomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) out.push_back(*i++);
    else if (j->first < i->first) out.push_back(*j++);
    else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  out.insert(out.end(), j, b.end());
  return out;
}

void accumulate(NormalForm& into, const AtomMonomial& mono, const Poly& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = into.try_emplace(mono, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) into.erase(it);
  }
}

NormalForm multiply(const NormalForm& a, const NormalForm& b) {
  NormalForm out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) accumulate(out, multiply(ma, mb), ca * cb);
  }
  return out;
}

NormalForm one() { return NormalForm{{AtomMonomial{}, Poly(1)}}; }

const std::vector<std::string>& reserved_names() {
  static const std::vector<std::string> names{"u", "eps", "bell", "inv", "part", "comp", "bar", "E", "t"};
  return names;
}

}  // namespace

bool Atom::coherent() const {
  if (egf.order() != order()) return false;
  for (int k = 0; k <= order(); ++k) {
    if (!(egf.egf_moment(k) == moments[k])) return false;
  }
  return true;
}

Workspace::Workspace(int order, std::vector<std::string> indeterminates) : order_(order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "workspace order must be nonnegative");
  for (const auto& name : indeterminates) declare_indeterminate(name);

  std::vector<Poly> eps(static_cast<std::size_t>(order) + 1);
  eps[0] = Poly(1);
  register_atom("eps", eps, Series::constant(Poly(1), order), AtomKind::Augmentation);
  std::vector<Poly> ones(static_cast<std::size_t>(order) + 1, Poly(1));
  register_atom("u", ones, Series::exponential(order), AtomKind::Unity);
  bind("eps", augmentation());
  bind("u", unity());
}

void Workspace::declare_indeterminate(const std::string& name) {
  if (is_declared(name)) return;
  if (symbols_.count(name) != 0 ||
      std::find(reserved_names().begin(), reserved_names().end(), name) != reserved_names().end()) {
    throw Error(ErrorCode::DuplicateName, "'" + name + "' is already used");
  }
  indeterminates_.push_back(name);
  std::sort(indeterminates_.begin(), indeterminates_.end());
}

bool Workspace::is_declared(std::string_view name) const {
  return std::find(indeterminates_.begin(), indeterminates_.end(), name) != indeterminates_.end();
}

void Workspace::require_declared(const Poly& p) const {
  for (const auto& v : p.variables()) {
    if (!is_declared(v)) throw Error(ErrorCode::UndeclaredIndeterminate, "indeterminate '" + v + "' is not declared");
  }
}

void Workspace::require_free_name(const std::string& name) const {
  if (symbols_.count(name) != 0 || is_declared(name) ||
      std::find(reserved_names().begin(), reserved_names().end(), name) != reserved_names().end()) {
    throw Error(ErrorCode::DuplicateName, "'" + name + "' is already used");
  }
}

AtomId Workspace::define_umbra(const std::string& name, std::vector<Poly> moments) {
  require_free_name(name);
  if (moments.empty() || !moments[0].is_one()) {
    throw Error(ErrorCode::BadZerothMoment,
                "umbra '" + name + "' must have zeroth moment 1, got " +
                    (moments.empty() ? std::string("nothing") : moments[0].to_string()));
  }
  if (static_cast<int>(moments.size()) > order_ + 1) moments.resize(static_cast<std::size_t>(order_) + 1);
  for (const auto& m : moments) require_declared(m);
  Series egf = Series::from_moments(moments);
  AtomId id = register_atom(name, std::move(moments), std::move(egf), AtomKind::User);
  bind(name, id);
  return id;
}

AtomId Workspace::clone(AtomId source, std::optional<std::string> name) {
  const Atom& src = atom(source);
  std::string chosen;
  if (name) {
    chosen = *name;
  } else {
    auto taken = [this](const std::string& n) {
      return symbols_.count(n) != 0 ||
             std::any_of(atoms_.begin(), atoms_.end(), [&](const Atom& a) { return a.name == n; });
    };
    chosen = src.name + "'";
    while (taken(chosen)) chosen += "'";
  }
  return register_atom(chosen, src.moments, src.egf, AtomKind::Clone, src.bell_scalar);
}

AtomId Workspace::register_atom(std::string name, std::vector<Poly> moments, Series egf, AtomKind kind,
                                bool bell_scalar) {
  if (moments.empty() || !moments[0].is_one()) {
    throw Error(ErrorCode::BadZerothMoment, "atom '" + name + "' must have zeroth moment 1");
  }
  Atom a{AtomId{static_cast<std::uint32_t>(atoms_.size())}, std::move(name), std::move(moments),
         std::move(egf), kind, bell_scalar};
  if (!a.coherent()) {
    throw Error(ErrorCode::IncoherentAtom, "moments and generating function of '" + a.name + "' disagree");
  }
  atoms_.push_back(std::move(a));
  return atoms_.back().id;
}

AtomId Workspace::materialize(const Expr& e, std::string name) {
  if (e.kind() == Expr::Kind::Atom) return e.atom_id();
  auto moments = moments_of(e, support_order(e));
  Series egf = Series::from_moments(moments);
  return register_atom(std::move(name), std::move(moments), std::move(egf));
}

const Atom& Workspace::atom(AtomId id) const {
  if (id.value >= atoms_.size()) throw Error(ErrorCode::UnknownAtom, "no atom with id " + std::to_string(id.value));
  return atoms_[id.value];
}

std::optional<AtomId> Workspace::lookup(std::string_view symbol) const {
  if (auto it = symbols_.find(symbol); it != symbols_.end()) return it->second;
  return std::nullopt;
}

void Workspace::bind(const std::string& symbol, AtomId id) {
  atom(id);
  symbols_[symbol] = id;
}

namespace {

class Evaluator {
 public:
  Evaluator(const std::deque<Atom>& atoms, std::uint32_t unity) : atoms_(atoms), unity_(unity) {}

  NormalForm expand(const Expr& e) const {
    switch (e.kind()) {
      case Expr::Kind::Atom: {
        if (e.atom_id().value == unity_) return one();
        return NormalForm{{AtomMonomial{{e.atom_id().value, 1U}}, Poly(1)}};
      }
      case Expr::Kind::Scalar: {
        NormalForm out;
        accumulate(out, {}, e.coefficient());
        return out;
      }
      case Expr::Kind::Sum: {
        NormalForm out;
        for (const auto& c : e.children()) {
          for (const auto& [m, coeff] : expand(c)) accumulate(out, m, coeff);
        }
        return out;
      }
      case Expr::Kind::Product: {
        NormalForm out = one();
        for (const auto& c : e.children()) out = multiply(out, expand(c));
        return out;
      }
      case Expr::Kind::ScalarMul: {
        NormalForm out;
        for (const auto& [m, coeff] : expand(e.children()[0])) accumulate(out, m, coeff * e.coefficient());
        return out;
      }
      case Expr::Kind::Power: {
        NormalForm base = expand(e.children()[0]);
        NormalForm out = one();
        for (unsigned i = 0; i < e.exponent(); ++i) out = multiply(out, base);
        return out;
      }
    }
    return {};
  }

  // Axiom ii: E factorizes across distinct atoms once the power is expanded.
  Poly apply(const NormalForm& nf) const {
    Poly total;
    for (const auto& [mono, coeff] : nf) {
      Poly term = coeff;
      for (const auto& [id, p] : mono) {
        const Atom& a = atoms_[id];
        if (static_cast<int>(p) > a.order()) {
          throw Error(ErrorCode::OrderExceeded, "E[" + a.name + "^" + std::to_string(p) +
                                                    "] is beyond the known moments (order " +
                                                    std::to_string(a.order()) + ")");
        }
        term *= a.moments[p];
      }
      total += term;
    }
    return total;
  }

 private:
  const std::deque<Atom>& atoms_;
  std::uint32_t unity_;
};

}  // namespace

Poly Workspace::eval(const Expr& e, int k) const {
  if (k < 0 || k > order_) {
    throw Error(ErrorCode::OrderExceeded, "power " + std::to_string(k) + " outside 0.." + std::to_string(order_));
  }
  Evaluator ev(atoms_, unity().value);
  NormalForm base = ev.expand(e);
  NormalForm power = one();
  for (int i = 0; i < k; ++i) power = multiply(power, base);
  return ev.apply(power);
}

std::vector<Poly> Workspace::moments_of(const Expr& e, int max_k) const {
  if (max_k < 0 || max_k > order_) {
    throw Error(ErrorCode::OrderExceeded, "power " + std::to_string(max_k) + " outside 0.." + std::to_string(order_));
  }
  Evaluator ev(atoms_, unity().value);
  NormalForm base = ev.expand(e);
  NormalForm power = one();
  std::vector<Poly> out;
  out.reserve(static_cast<std::size_t>(max_k) + 1);
  for (int k = 0; k <= max_k; ++k) {
    out.push_back(ev.apply(power));
    if (k < max_k) power = multiply(power, base);
  }
  return out;
}

int Workspace::support_order(const Expr& e) const {
  for (AtomId id : e.support()) atom(id);
  // E[e^k] needs atom moments up to k times the atom's degree in e.
  Evaluator ev(atoms_, unity().value);
  std::map<std::uint32_t, unsigned> degree;
  for (const auto& [mono, coeff] : ev.expand(e)) {
    for (const auto& [id, p] : mono) degree[id] = std::max(degree[id], p);
  }
  int order = order_;
  for (const auto& [id, d] : degree) order = std::min(order, atoms_[id].order() / static_cast<int>(d));
  return order;
}

Series Workspace::gf_of(const Expr& e) const { return gf_of(e, support_order(e)); }

Series Workspace::gf_of(const Expr& e, int order) const {
  auto moments = moments_of(e, order);
  return Series::from_moments(moments);
}

Similarity Workspace::similar_to(const Expr& a, const Expr& b) const {
  Similarity result;
  const int reach = std::min(support_order(a), support_order(b));
  Evaluator ev(atoms_, unity().value);
  const NormalForm base_a = ev.expand(a);
  const NormalForm base_b = ev.expand(b);
  NormalForm pa = one();
  NormalForm pb = one();
  for (int k = 0; k <= reach; ++k) {
    Poly va, vb;
    try {
      va = ev.apply(pa);
      vb = ev.apply(pb);
    } catch (const Error& err) {
      if (err.code() == ErrorCode::OrderExceeded) break;
      throw;
    }
    result.checked_order = k;
    if (!(va == vb)) {
      result.similar = false;
      result.first_difference = k;
      return result;
    }
    if (k < reach) {
      pa = multiply(pa, base_a);
      pb = multiply(pb, base_b);
    }
  }
  return result;
}

nlohmann::json Workspace::to_json() const {
  nlohmann::json umbrae = nlohmann::json::object();
  for (const auto& a : atoms_) {
    if (a.kind != AtomKind::User) continue;
    nlohmann::json ms = nlohmann::json::array();
    for (const auto& m : a.moments) ms.push_back(m.to_string());
    umbrae[a.name] = ms;
  }
  return {{"order", order_}, {"indeterminates", indeterminates_}, {"umbrae", umbrae}};
}

Workspace Workspace::from_json(const nlohmann::json& j) {
  Workspace ws(j.value("order", kDefaultOrder), j.value("indeterminates", std::vector<std::string>{}));
  if (j.contains("umbrae")) {
    for (const auto& [name, moments] : j.at("umbrae").items()) {
      std::vector<Poly> ms;
      for (const auto& m : moments) ms.push_back(poly_from_json(m));
      ws.define_umbra(name, std::move(ms));
    }
  }
  return ws;
}

}  // namespace umbral
