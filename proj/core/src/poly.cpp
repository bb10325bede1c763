#include "umbral/poly.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "umbral/error.hpp"

namespace umbral {

namespace {

struct VariableRegistry {
  std::shared_mutex mutex;
  std::deque<std::string> names;
  std::unordered_map<std::string, VarId> ids;
};

VariableRegistry& registry() {
  static VariableRegistry r;
  return r;
}

Poly::Monomial multiply(const Poly::Monomial& a, const Poly::Monomial& b) {
  Poly::Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (i->first < j->first) {
      out.push_back(*i++);
    } else if (j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.insert(out.end(), i, a.end());
  out.insert(out.end(), j, b.end());
  return out;
}

unsigned degree(const Poly::Monomial& m) {
  unsigned d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

// Variables ordered by name, for rendering.
std::vector<std::pair<std::string, unsigned>> named(const Poly::Monomial& m) {
  std::vector<std::pair<std::string, unsigned>> out;
  out.reserve(m.size());
  for (const auto& [v, e] : m) out.emplace_back(variable_name(v), e);
  std::sort(out.begin(), out.end());
  return out;
}

std::string monomial_text(const Poly::Monomial& m) {
  std::string s;
  for (const auto& [name, e] : named(m)) {
    if (!s.empty()) s += '*';
    s += name;
    if (e != 1) s += '^' + std::to_string(e);
  }
  return s;
}

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : text_(text) {}

  Poly parse() {
    Poly p = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorCode::SyntaxError,
                what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'", pos_);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc;
    bool negate = false;
    if (accept('-')) negate = true;
    else accept('+');
    acc = term();
    if (negate) acc = -acc;
    while (true) {
      if (accept('+')) acc += term();
      else if (accept('-')) acc -= term();
      else return acc;
    }
  }

  Poly term() {
    Poly acc = factor();
    while (true) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (accept('/')) {
        auto at = pos_;
        auto c = factor().constant();
        if (!c || *c == 0) {
          pos_ = at;
          fail("division by a non-constant or zero");
        }
        acc /= *c;
      } else {
        return acc;
      }
    }
  }

  Poly factor() {
    Poly base = primary();
    if (accept('^')) {
      skip_ws();
      auto start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      base = base.pow(static_cast<unsigned>(std::stoul(std::string(text_.substr(start, pos_ - start)))));
    }
    return base;
  }

  Poly primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Poly inner = expr();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -primary();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      auto start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      return Poly(Rational(Integer(std::string(text_.substr(start, pos_ - start)), 10)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      auto start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
        ++pos_;
      }
      return Poly::variable(text_.substr(start, pos_ - start));
    }
    fail("unexpected character");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

VarId intern_variable(std::string_view name) {
  auto& r = registry();
  {
    std::shared_lock lock(r.mutex);
    if (auto it = r.ids.find(std::string(name)); it != r.ids.end()) return it->second;
  }
  std::unique_lock lock(r.mutex);
  auto [it, inserted] = r.ids.try_emplace(std::string(name), static_cast<VarId>(r.names.size()));
  if (inserted) r.names.emplace_back(name);
  return it->second;
}

const std::string& variable_name(VarId id) {
  auto& r = registry();
  std::shared_lock lock(r.mutex);
  return r.names.at(id);
}

Poly::Poly(long constant) {
  if (constant != 0) terms_.emplace(Monomial{}, Rational(constant));
}

Poly::Poly(const Rational& constant) {
  if (constant != 0) terms_.emplace(Monomial{}, constant);
}

Poly Poly::variable(std::string_view name, unsigned exponent) {
  if (exponent == 0) return Poly(1);
  return monomial(Rational(1), Monomial{{intern_variable(name), exponent}});
}

Poly Poly::monomial(const Rational& coeff, Monomial mono) {
  Poly p;
  std::sort(mono.begin(), mono.end());
  p.add_term(mono, coeff);
  return p;
}

Poly Poly::parse(std::string_view text) { return PolyParser(text).parse(); }

bool Poly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

bool Poly::is_one() const {
  return terms_.size() == 1 && terms_.begin()->first.empty() && terms_.begin()->second == 1;
}

std::optional<Rational> Poly::constant() const {
  if (terms_.empty()) return Rational(0);
  if (is_constant()) return terms_.begin()->second;
  return std::nullopt;
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<std::string> Poly::as_variable() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [mono, coeff] = *terms_.begin();
  if (coeff != 1 || mono.size() != 1 || mono[0].second != 1) return std::nullopt;
  return variable_name(mono[0].first);
}

std::vector<std::string> Poly::variables() const {
  std::vector<std::string> out;
  for (const auto& [mono, coeff] : terms_) {
    for (const auto& [v, e] : mono) out.push_back(variable_name(v));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

unsigned Poly::total_degree() const {
  unsigned d = 0;
  for (const auto& [mono, coeff] : terms_) d = std::max(d, degree(mono));
  return d;
}

void Poly::add_term(const Monomial& mono, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(mono, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& rhs) {
  for (const auto& [mono, coeff] : rhs.terms_) add_term(mono, coeff);
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  for (const auto& [mono, coeff] : rhs.terms_) add_term(mono, -coeff);
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  Poly out;
  if (lhs.terms_.empty() || rhs.terms_.empty()) return out;
  if (lhs.is_constant() && rhs.is_constant()) {
    out.terms_.emplace(Poly::Monomial{}, lhs.terms_.begin()->second * rhs.terms_.begin()->second);
    return out;
  }
  for (const auto& [ma, ca] : lhs.terms_) {
    for (const auto& [mb, cb] : rhs.terms_) {
      out.add_term(multiply(ma, mb), ca * cb);
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& rhs) {
  *this = *this * rhs;
  return *this;
}

Poly& Poly::operator*=(const Rational& rhs) {
  if (rhs == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [mono, coeff] : terms_) coeff *= rhs;
  return *this;
}

Poly& Poly::operator/=(const Rational& rhs) {
  if (rhs == 0) throw Error(ErrorCode::DomainError, "division of a polynomial by zero");
  for (auto& [mono, coeff] : terms_) coeff /= rhs;
  return *this;
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [mono, coeff] : out.terms_) coeff = -coeff;
  return out;
}

Poly Poly::pow(unsigned exponent) const {
  Poly result(1);
  Poly base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    exponent >>= 1U;
    if (exponent > 0) base *= base;
  }
  return result;
}

Poly Poly::substitute(std::string_view var, const Poly& value) const {
  const VarId id = intern_variable(var);
  std::vector<Poly> powers{Poly(1)};
  Poly out;
  for (const auto& [mono, coeff] : terms_) {
    Monomial rest;
    unsigned e = 0;
    for (const auto& vp : mono) {
      if (vp.first == id) e = vp.second;
      else rest.push_back(vp);
    }
    while (powers.size() <= e) powers.push_back(powers.back() * value);
    out += monomial(coeff, std::move(rest)) * powers[e];
  }
  return out;
}

Poly Poly::derivative(std::string_view var) const {
  const VarId id = intern_variable(var);
  Poly out;
  for (const auto& [mono, coeff] : terms_) {
    Monomial next;
    unsigned e = 0;
    for (const auto& vp : mono) {
      if (vp.first == id) {
        e = vp.second;
        if (e > 1) next.emplace_back(id, e - 1);
      } else {
        next.push_back(vp);
      }
    }
    if (e > 0) out.add_term(next, coeff * e);
  }
  return out;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  struct Entry {
    unsigned deg;
    std::vector<std::pair<std::string, unsigned>> vars;
    const Rational* coeff;
    const Monomial* mono;
  };
  std::vector<Entry> entries;
  for (const auto& [mono, coeff] : terms_) entries.push_back({degree(mono), named(mono), &coeff, &mono});
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.deg != b.deg) return a.deg > b.deg;
    return a.vars < b.vars;
  });
  std::string out;
  bool first = true;
  for (const auto& e : entries) {
    Rational c = *e.coeff;
    bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    std::string mono = monomial_text(*e.mono);
    if (mono.empty()) {
      out += umbral::to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += umbral::to_string(c) + "*" + mono;
    }
  }
  return out;
}

Poly falling_factorial(const Poly& x, unsigned i) {
  Poly out(1);
  for (unsigned j = 0; j < i; ++j) out *= x - Poly(static_cast<long>(j));
  return out;
}

nlohmann::json to_json(const Poly& p) {
  if (auto c = p.constant()) return umbral::to_string(*c);
  nlohmann::json obj = nlohmann::json::object();
  for (const auto& [mono, coeff] : p.terms()) {
    std::string key = mono.empty() ? "1" : monomial_text(mono);
    obj[key] = umbral::to_string(coeff);
  }
  return obj;
}

Poly poly_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Poly::parse(j.get<std::string>());
  if (j.is_number_integer()) return Poly(j.get<long>());
  if (j.is_object()) {
    Poly out;
    for (const auto& [key, value] : j.items()) {
      Rational c = parse_rational(value.get<std::string>());
      out += (key == "1" ? Poly(1) : Poly::parse(key)) * c;
    }
    return out;
  }
  throw Error(ErrorCode::InvalidArgument, "polynomial must be a string or a term map");
}

}  // namespace umbral
