#include "umbral/parser.hpp"

#include <cctype>
#include <optional>

#include "umbral/auxiliary_ops.hpp"
#include "umbral/error.hpp"

namespace umbral {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  char peek_after() const { return pos_ + 1 < text_.size() ? text_[pos_ + 1] : '\0'; }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_end() { return peek() == '\0'; }
  std::size_t pos() const noexcept { return pos_; }

  std::string ident() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_ident_char(text_[pos_])) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  unsigned long uint() {
    skip();
    if (pos_ >= text_.size() || !is_digit(text_[pos_])) fail("expected a nonnegative integer");
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ - start > 9) fail("integer too large", start);
    return std::stoul(std::string(text_.substr(start, pos_ - start)));
  }
  // uint or uint/uint; the slash must be followed by a digit.
  Rational number() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    if (pos_ + 1 < text_.size() && text_[pos_] == '/' && is_digit(text_[pos_ + 1])) {
      ++pos_;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_;
    }
    try {
      return parse_rational(text_.substr(start, pos_ - start));
    } catch (const Error& e) {
      fail(e.what(), start);
    }
  }

  [[noreturn]] void fail(const std::string& message) { fail(message, pos_); }
  [[noreturn]] void fail(const std::string& message, std::size_t at) const {
    throw Error(ErrorCode::SyntaxError, message + " at offset " + std::to_string(at), at);
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// Top-level characters of an atom name that force parentheses.
bool name_needs_parens(const std::string& name, bool as_power_base) {
  int depth = 0;
  for (char c : name) {
    if (c == '(') ++depth;
    else if (c == ')') --depth;
    else if (depth == 0 && (c == ' ' || c == '+' || c == '*' || c == '-' || (as_power_base && c == '^'))) return true;
  }
  return false;
}

enum class Ctx { Top, SumTerm, ProductFactor, ScaledInner, PowerBase };

std::string render_scalar(const Poly& p, Ctx ctx) {
  std::string s = p.to_string();
  if (ctx == Ctx::Top) return s;
  const bool negative = !s.empty() && s.front() == '-';
  const bool compound = p.term_count() > 1;
  const bool has_ops = s.find_first_of("*/^") != std::string::npos;
  if (negative || compound || (ctx == Ctx::PowerBase && has_ops)) return "(" + s + ")";
  return s;
}

std::string render_impl(const Workspace& ws, const Expr& e, Ctx ctx) {
  auto wrap = [](std::string s) { return "(" + s + ")"; };
  switch (e.kind()) {
    case Expr::Kind::Atom: {
      const std::string& name = ws.atom(e.atom_id()).name;
      return name_needs_parens(name, ctx == Ctx::PowerBase) ? wrap(name) : name;
    }
    case Expr::Kind::Scalar:
      return render_scalar(e.coefficient(), ctx);
    case Expr::Kind::Sum: {
      std::string s;
      for (const auto& c : e.children()) {
        if (!s.empty()) s += " + ";
        s += render_impl(ws, c, Ctx::SumTerm);
      }
      return ctx == Ctx::Top || ctx == Ctx::SumTerm ? s : wrap(s);
    }
    case Expr::Kind::Product: {
      std::string s;
      for (const auto& c : e.children()) {
        if (!s.empty()) s += "*";
        s += render_impl(ws, c, Ctx::ProductFactor);
      }
      return ctx == Ctx::Top || ctx == Ctx::SumTerm || ctx == Ctx::ScaledInner ? s : wrap(s);
    }
    case Expr::Kind::ScalarMul: {
      std::string s = render_scalar(e.coefficient(), Ctx::ProductFactor) + "*" +
                      render_impl(ws, e.children()[0], Ctx::ScaledInner);
      return ctx == Ctx::Top || ctx == Ctx::SumTerm ? s : wrap(s);
    }
    case Expr::Kind::Power: {
      std::string s = render_impl(ws, e.children()[0], Ctx::PowerBase) + "^" + std::to_string(e.exponent());
      return ctx == Ctx::PowerBase ? wrap(s) : s;
    }
  }
  return {};
}

bool is_func(const std::string& name) {
  return name == "inv" || name == "bell" || name == "part" || name == "comp" || name == "bar" || name == "E";
}

class ExprParser {
 public:
  ExprParser(Workspace& ws, std::string_view text) : ws_(ws), cur_(text) {}

  Expr run() {
    Expr e = expr();
    if (!cur_.at_end()) cur_.fail(std::string("unexpected '") + cur_.peek() + "'");
    return e;
  }

 private:
  Expr expr() {
    std::vector<Expr> terms;
    if (cur_.peek() == '-') {
      std::size_t at = cur_.pos();
      cur_.accept('-');
      terms.push_back(negate(term(), at));
    } else {
      terms.push_back(term());
    }
    for (;;) {
      if (cur_.accept('+')) {
        terms.push_back(term());
      } else if (cur_.peek() == '-') {
        std::size_t at = cur_.pos();
        cur_.accept('-');
        terms.push_back(negate(term(), at));
      } else {
        break;
      }
    }
    if (terms.size() == 1) return terms.front();
    bool all_scalar = true;
    for (const auto& t : terms) all_scalar = all_scalar && t.kind() == Expr::Kind::Scalar;
    if (!all_scalar) return Expr::sum(std::move(terms));
    Poly total;
    for (const auto& t : terms) total += t.coefficient();
    return Expr::scalar(std::move(total));
  }

  // On umbrae subtraction adds the inverse umbra.
  Expr negate(const Expr& e, std::size_t at) {
    if (e.kind() == Expr::Kind::Scalar) return Expr::scalar(-e.coefficient());
    const AtomId alpha = operand(e, at);
    return Expr(construct(names::inverse(ws_, alpha), [&](std::string key) {
      return inverse_umbra(ws_, alpha, std::move(key));
    }));
  }

  Expr term() {
    Poly coeff(1);
    bool has_scalar = false;
    std::vector<Expr> umbral;
    do {
      Expr f = factor();
      if (f.kind() == Expr::Kind::Scalar) {
        coeff *= f.coefficient();
        has_scalar = true;
      } else {
        umbral.push_back(std::move(f));
      }
    } while (cur_.accept('*'));
    if (umbral.empty()) return Expr::scalar(std::move(coeff));
    Expr body = Expr::product(std::move(umbral));
    return has_scalar ? Expr::scaled(std::move(coeff), std::move(body)) : body;
  }

  Expr factor() {
    const std::size_t at = cur_.pos();
    Expr base = dotted();
    if (cur_.peek() != '^') return base;
    cur_.accept('^');
    if (cur_.peek() == '.') {
      cur_.accept('.');
      const bool negative = cur_.accept('-');
      const long n = static_cast<long>(cur_.uint()) * (negative ? -1 : 1);
      if (base.kind() == Expr::Kind::Scalar) cur_.fail("point power needs an umbra", at);
      const AtomId alpha = operand(base, at);
      return Expr(construct(names::point_power(ws_, alpha, n), [&](std::string key) {
        return point_power(ws_, alpha, n, std::move(key));
      }));
    }
    const auto n = static_cast<unsigned>(cur_.uint());
    if (base.kind() == Expr::Kind::Scalar) return Expr::scalar(base.coefficient().pow(n));
    return Expr::power(std::move(base), n);
  }

  Expr dotted() {
    const std::size_t at = cur_.pos();
    Expr left = postfix();
    if (cur_.peek() != '.') return left;
    cur_.accept('.');
    const std::size_t right_at = cur_.pos();
    Expr right = dotted();
    if (right.kind() == Expr::Kind::Scalar) cur_.fail("the right side of '.' must be an umbra", right_at);
    const AtomId alpha = operand(right, right_at);
    DotLeft dl = dot_left(left, at);
    return Expr(construct(names::dot(ws_, dl, alpha), [&](std::string key) {
      return dot(ws_, dl, alpha, std::move(key));
    }));
  }

  DotLeft dot_left(const Expr& left, std::size_t at) {
    if (left.kind() != Expr::Kind::Scalar) return DotLeft::umbra(operand(left, at));
    const Poly& p = left.coefficient();
    if (auto c = p.constant(); c && is_integer(*c)) {
      if (!c->get_num().fits_slong_p()) cur_.fail("integer too large", at);
      return DotLeft::integer(c->get_num().get_si());
    }
    return DotLeft::scalar(p);
  }

  Expr postfix() {
    const std::size_t at = cur_.pos();
    Expr e = primary();
    std::string primes;
    while (cur_.peek() == '\'') {
      cur_.accept('\'');
      primes += '\'';
    }
    if (primes.empty()) return e;
    if (e.kind() == Expr::Kind::Scalar) cur_.fail("a scalar cannot be cloned", at);
    const AtomId source = operand(e, at);
    return Expr(construct(operand_name(ws_, source) + primes, [&](std::string key) {
      return ws_.clone(source, std::move(key));
    }));
  }

  Expr primary() {
    const char c = cur_.peek();
    const std::size_t at = cur_.pos();
    if (is_digit(c)) return Expr::scalar(Poly(cur_.number()));
    if (c == '(') {
      cur_.accept('(');
      Expr e = expr();
      cur_.expect(')');
      return e;
    }
    if (!is_ident_start(c)) {
      if (c == '\0') cur_.fail("unexpected end of input");
      cur_.fail(std::string("unexpected '") + c + "'");
    }
    const std::string name = cur_.ident();
    if (is_func(name)) return call(name, at);
    if (ws_.is_declared(name)) return Expr::scalar(Poly::variable(name));
    if (auto id = ws_.lookup(name)) return Expr(*id);
    if (cur_.peek() == '.' || scalar_context_ > 0) {
      throw Error(ErrorCode::UndeclaredIndeterminate,
                  "indeterminate '" + name + "' is not declared (offset " + std::to_string(at) + ")", at);
    }
    throw Error(ErrorCode::UnknownAtom, "unknown umbra '" + name + "' at offset " + std::to_string(at), at);
  }

  Expr call(const std::string& name, std::size_t at) {
    if (name == "E") {
      cur_.expect('[');
      Expr inner = expr();
      cur_.expect(']');
      return Expr::scalar(ws_.eval(inner, 1));
    }
    if (name == "bell") {
      if (cur_.peek() != '(') {
        return Expr(construct(names::bell(ws_, std::nullopt), [&](std::string key) {
          return bell_umbra(ws_, std::nullopt, std::move(key));
        }));
      }
      cur_.accept('(');
      std::optional<DotLeft> scale = scalar_arg();
      cur_.expect(')');
      return Expr(construct(names::bell(ws_, scale), [&](std::string key) {
        return bell_umbra(ws_, scale, std::move(key));
      }));
    }
    cur_.expect('(');
    const AtomId first = umbral_arg();
    if (name == "inv" || name == "bar") {
      cur_.expect(')');
      if (name == "inv") {
        return Expr(construct(names::inverse(ws_, first), [&](std::string key) {
          return inverse_umbra(ws_, first, std::move(key));
        }));
      }
      return Expr(construct(names::alpha_bar(ws_, first), [&](std::string key) {
        return alpha_bar(ws_, first, std::move(key));
      }));
    }
    if (name == "part") {
      std::optional<DotLeft> scale;
      if (cur_.accept(',')) scale = scalar_arg();
      cur_.expect(')');
      return Expr(construct(names::partition(ws_, first, scale), [&](std::string key) {
        return partition_umbra(ws_, first, scale, std::move(key));
      }));
    }
    // comp
    cur_.expect(',');
    const AtomId second = umbral_arg();
    cur_.expect(')');
    (void)at;
    return Expr(construct(names::composition(ws_, first, second), [&](std::string key) {
      return composition_umbra(ws_, first, second, std::move(key));
    }));
  }

  AtomId umbral_arg() {
    const std::size_t at = cur_.pos();
    Expr e = expr();
    if (e.kind() == Expr::Kind::Scalar) cur_.fail("expected an umbra", at);
    return operand(e, at);
  }

  DotLeft scalar_arg() {
    const std::size_t at = cur_.pos();
    ++scalar_context_;
    Expr e = expr();
    --scalar_context_;
    if (e.kind() != Expr::Kind::Scalar) cur_.fail("expected a scalar", at);
    return dot_left(e, at);
  }

  // The atom standing for e: e itself when it is an atom, otherwise a
  // materialized atom bound under the rendered text of e.
  AtomId operand(const Expr& e, std::size_t at) {
    if (e.kind() == Expr::Kind::Atom) return e.atom_id();
    if (e.kind() == Expr::Kind::Scalar) cur_.fail("expected an umbra", at);
    const std::string key = render(ws_, e);
    return construct(key, [&](std::string k) { return ws_.materialize(e, std::move(k)); });
  }

  template <typename Make>
  AtomId construct(const std::string& key, Make&& make) {
    if (auto id = ws_.lookup(key)) return *id;
    AtomId id = make(key);
    ws_.bind(key, id);
    return id;
  }

  Workspace& ws_;
  Cursor cur_;
  int scalar_context_ = 0;
};

class SeriesParser {
 public:
  SeriesParser(std::string_view text, int order) : cur_(text), order_(order) {}

  Series run() {
    Series s = expr();
    if (!cur_.at_end()) cur_.fail(std::string("unexpected '") + cur_.peek() + "'");
    return s;
  }

 private:
  Series expr() {
    Series acc = term();
    for (;;) {
      if (cur_.accept('+')) acc += term();
      else if (cur_.accept('-')) acc -= term();
      else return acc;
    }
  }

  Series term() {
    Series acc = factor();
    for (;;) {
      if (cur_.accept('*')) {
        acc = acc * factor();
      } else if (cur_.peek() == '/') {
        const std::size_t at = cur_.pos();
        cur_.accept('/');
        acc = acc * inverse(factor(), at);
      } else {
        return acc;
      }
    }
  }

  Series factor() {
    const std::size_t at = cur_.pos();
    if (cur_.accept('-')) return -factor();
    Series base = primary();
    if (!cur_.accept('^')) return base;
    const bool negative = cur_.accept('-');
    const auto n = static_cast<long>(cur_.uint());
    if (!negative) return base.pow_int(n);
    return inverse(base, at).pow_int(n);
  }

  Series primary() {
    const char c = cur_.peek();
    const std::size_t at = cur_.pos();
    if (is_digit(c)) return Series::constant(Poly(cur_.number()), order_);
    if (c == '(') {
      cur_.accept('(');
      Series s = expr();
      cur_.expect(')');
      return s;
    }
    if (!is_ident_start(c)) cur_.fail(c == '\0' ? "unexpected end of input" : std::string("unexpected '") + c + "'");
    const std::string name = cur_.ident();
    if (name == "t") return Series::identity(order_);
    if (name == "exp" || name == "log") {
      cur_.expect('(');
      Series arg = expr();
      cur_.expect(')');
      if (name == "exp") {
        if (!arg.is_delta()) cur_.fail("exp needs an argument with zero constant term", at);
        return exp(arg);
      }
      if (!arg.is_unital()) cur_.fail("log needs an argument with constant term 1", at);
      return log(arg);
    }
    cur_.fail("unknown name '" + name + "'", at);
  }

  Series inverse(const Series& s, std::size_t at) {
    auto c = s[0].constant();
    if (!c || *c == 0) cur_.fail("divisor has no invertible constant term", at);
    const Rational inv = 1 / *c;
    return (s * Poly(inv)).reciprocal() * Poly(inv);
  }

  Cursor cur_;
  int order_;
};

}  // namespace

Expr parse_expr(Workspace& ws, std::string_view text) { return ExprParser(ws, text).run(); }

std::string render(const Workspace& ws, const Expr& e) { return render_impl(ws, e, Ctx::Top); }

Series parse_series(std::string_view text, int order) { return SeriesParser(text, order).run(); }

}  // namespace umbral
