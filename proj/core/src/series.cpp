#include "umbral/series.hpp"

#include <nlohmann/json.hpp>

#include "umbral/error.hpp"

namespace umbral {

namespace {

void require_same_order(const Series& a, const Series& b, const char* op) {
  if (a.order() != b.order()) {
    throw Error(ErrorCode::OrderMismatch, std::string(op) + " of series of orders " +
                                              std::to_string(a.order()) + " and " +
                                              std::to_string(b.order()));
  }
}

}  // namespace

Series::Series(int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "series order must be nonnegative");
  coeffs_.resize(static_cast<std::size_t>(order) + 1);
}

Series Series::make(std::vector<Poly> coeffs, int order) {
  if (order < 0) throw Error(ErrorCode::InvalidArgument, "series order must be nonnegative");
  if (coeffs.size() > static_cast<std::size_t>(order) + 1) {
    throw Error(ErrorCode::InvalidArgument, std::to_string(coeffs.size()) +
                                                " coefficients exceed order " + std::to_string(order));
  }
  coeffs.resize(static_cast<std::size_t>(order) + 1);
  Series s(order);
  s.coeffs_ = std::move(coeffs);
  return s;
}

Series Series::from_moments(std::span<const Poly> moments) {
  if (moments.empty()) throw Error(ErrorCode::InvalidArgument, "empty moment sequence");
  Series s(static_cast<int>(moments.size()) - 1);
  for (std::size_t k = 0; k < moments.size(); ++k) {
    s.coeffs_[k] = moments[k] / factorial(static_cast<unsigned>(k));
  }
  return s;
}

Series Series::constant(const Poly& c, int order) {
  Series s(order);
  s.coeffs_[0] = c;
  return s;
}

Series Series::identity(int order) {
  Series s(order);
  if (order >= 1) s.coeffs_[1] = Poly(1);
  return s;
}

Series Series::exponential(int order, const Poly& c) {
  Series s(order);
  Poly power(1);
  for (int k = 0; k <= order; ++k) {
    s.coeffs_[k] = power / factorial(static_cast<unsigned>(k));
    power *= c;
  }
  return s;
}

Poly Series::egf_moment(int k) const {
  if (k < 0 || k > order()) {
    throw Error(ErrorCode::OrderExceeded,
                "moment " + std::to_string(k) + " requested from a series of order " + std::to_string(order()));
  }
  return coeffs_[k] * factorial(static_cast<unsigned>(k));
}

std::vector<Poly> Series::moments() const {
  std::vector<Poly> out;
  out.reserve(coeffs_.size());
  for (int k = 0; k <= order(); ++k) out.push_back(egf_moment(k));
  return out;
}

Series& Series::operator+=(const Series& rhs) {
  require_same_order(*this, rhs, "sum");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
  return *this;
}

Series& Series::operator-=(const Series& rhs) {
  require_same_order(*this, rhs, "difference");
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
  return *this;
}

Series operator*(const Series& a, const Series& b) {
  require_same_order(a, b, "product");
  const int n = a.order();
  Series out(n);
  for (int i = 0; i <= n; ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (b.coeffs_[j].is_zero()) continue;
      out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return out;
}

Series& Series::operator*=(const Series& rhs) {
  *this = *this * rhs;
  return *this;
}

Series& Series::operator*=(const Poly& scalar) {
  for (auto& c : coeffs_) c *= scalar;
  return *this;
}

Series Series::operator-() const {
  Series out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Series Series::reciprocal() const {
  if (!is_unital()) {
    throw Error(ErrorCode::NegativePowerOfDeltaSeries,
                "reciprocal needs constant term 1, got " + coeffs_[0].to_string());
  }
  const int n = order();
  Series out(n);
  out.coeffs_[0] = Poly(1);
  // (a * r)_k = 0 for k >= 1 with a_0 = 1.
  for (int k = 1; k <= n; ++k) {
    Poly acc;
    for (int j = 1; j <= k; ++j) {
      if (!coeffs_[j].is_zero()) acc += coeffs_[j] * out.coeffs_[k - j];
    }
    out.coeffs_[k] = -acc;
  }
  return out;
}

Series Series::pow_int(long n) const {
  if (n < 0) {
    if (!is_unital()) {
      throw Error(ErrorCode::NegativePowerOfDeltaSeries,
                  "negative power of a series with constant term " + coeffs_[0].to_string());
    }
    return reciprocal().pow_int(-n);
  }
  Series result = Series::constant(Poly(1), order());
  Series base = *this;
  auto e = static_cast<unsigned long>(n);
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1UL;
    if (e > 0) base *= base;
  }
  return result;
}

Series Series::derivative() const {
  const int n = order();
  if (n == 0) return Series(0);
  Series out(n - 1);
  for (int k = 1; k <= n; ++k) out.coeffs_[k - 1] = coeffs_[k] * Rational(k);
  return out;
}

Series Series::truncate(int new_order) const {
  if (new_order > order()) {
    throw Error(ErrorCode::OrderExceeded, "cannot extend a series of order " + std::to_string(order()) +
                                              " to order " + std::to_string(new_order));
  }
  Series out(new_order);
  for (int k = 0; k <= new_order; ++k) out.coeffs_[k] = coeffs_[k];
  return out;
}

Series Series::shift_down() const {
  if (!is_delta()) throw Error(ErrorCode::DomainError, "division by t needs a zero constant term");
  if (order() == 0) throw Error(ErrorCode::OrderExceeded, "division by t of an order-0 series");
  Series out(order() - 1);
  for (int k = 1; k <= order(); ++k) out.coeffs_[k - 1] = coeffs_[k];
  return out;
}

Series Series::shift_up() const {
  Series out(order() + 1);
  for (int k = 0; k <= order(); ++k) out.coeffs_[k + 1] = coeffs_[k];
  return out;
}

Series Series::substitute(std::string_view var, const Poly& value) const {
  Series out = *this;
  for (auto& c : out.coeffs_) c = c.substitute(var, value);
  return out;
}

Series exp(const Series& h) {
  if (!h.is_delta()) {
    throw Error(ErrorCode::DomainError, "exp needs a delta series, constant term is " + h[0].to_string());
  }
  const int n = h.order();
  std::vector<Poly> e(static_cast<std::size_t>(n) + 1);
  e[0] = Poly(1);
  // E' = h' E  =>  k e_k = sum_{j=1..k} j h_j e_{k-j}.
  for (int k = 1; k <= n; ++k) {
    Poly acc;
    for (int j = 1; j <= k; ++j) {
      if (!h[j].is_zero()) acc += h[j] * e[k - j] * Rational(j);
    }
    e[k] = acc / Rational(k);
  }
  return Series::make(std::move(e), n);
}

Series log(const Series& f) {
  if (!f.is_unital()) {
    throw Error(ErrorCode::DomainError, "log needs a unital series, constant term is " + f[0].to_string());
  }
  const int n = f.order();
  std::vector<Poly> l(static_cast<std::size_t>(n) + 1);
  // f L' = f'  =>  k l_k = k f_k - sum_{j=1..k-1} j l_j f_{k-j}.
  for (int k = 1; k <= n; ++k) {
    Poly acc = f[k] * Rational(k);
    for (int j = 1; j < k; ++j) {
      if (!f[k - j].is_zero()) acc -= l[j] * f[k - j] * Rational(j);
    }
    l[k] = acc / Rational(k);
  }
  return Series::make(std::move(l), n);
}

Series compose(const Series& g, const Series& h) {
  require_same_order(g, h, "composition");
  if (!h.is_delta()) {
    throw Error(ErrorCode::DomainError, "composition needs an inner delta series, constant term is " +
                                            h[0].to_string());
  }
  const int n = g.order();
  Series out = Series::constant(g[n], n);
  for (int k = n - 1; k >= 0; --k) {
    out *= h;
    out += Series::constant(g[k], n);
  }
  return out;
}

Series revert(const Series& h) {
  if (!h.is_delta()) {
    throw Error(ErrorCode::NotInvertible, "reversion needs a delta series, constant term is " + h[0].to_string());
  }
  const int n = h.order();
  if (n == 0) return Series(0);
  auto lead = h[1].constant();
  if (!lead || *lead == 0) {
    throw Error(ErrorCode::NotInvertible, "linear coefficient " + h[1].to_string() + " has no reciprocal");
  }
  const Rational inv_lead = 1 / *lead;
  // r(t) = sum r_k t^k with h(r(t)) = t. The k-th coefficient of h(r) is
  // c_1 r_k plus terms involving only r_1..r_{k-1}, so each r_k is solved in turn.
  std::vector<Poly> r(static_cast<std::size_t>(n) + 1);
  r[1] = Poly(inv_lead);
  for (int k = 2; k <= n; ++k) {
    Series partial = Series::make(std::vector<Poly>(r.begin(), r.begin() + k), n);
    Series image = compose(h, partial);
    r[k] = -image[k] * inv_lead;
  }
  return Series::make(std::move(r), n);
}

nlohmann::json to_json(const Series& s) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(to_json(c));
  return {{"order", s.order()}, {"coeffs", coeffs}};
}

Series series_from_json(const nlohmann::json& j) {
  const int order = j.at("order").get<int>();
  std::vector<Poly> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(poly_from_json(c));
  return Series::make(std::move(coeffs), order);
}

}  // namespace umbral
