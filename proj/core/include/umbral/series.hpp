#pragma once

#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "umbral/poly.hpp"

namespace umbral {

inline constexpr int kDefaultOrder = 12;

/// Truncated power series c_0 + c_1 t + ... + c_N t^N with polynomial
/// coefficients. Coefficients are ordinary; the k-th exponential moment is
/// k! c_k. Binary operations require equal orders.
class Series {
 public:
  /// The zero series of the given order.
  explicit Series(int order = kDefaultOrder);

  /// Pads with zeros up to `order`; more than order+1 coefficients is an error.
  static Series make(std::vector<Poly> coeffs, int order);
  /// Series whose k-th coefficient is moments[k] / k!.
  static Series from_moments(std::span<const Poly> moments);
  static Series constant(const Poly& c, int order);
  /// The series t.
  static Series identity(int order);
  /// e^{c t}.
  static Series exponential(int order, const Poly& c = Poly(1));

  int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  const Poly& operator[](int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  std::span<const Poly> coeffs() const noexcept { return coeffs_; }

  bool is_unital() const { return coeffs_[0].is_one(); }
  bool is_delta() const { return coeffs_[0].is_zero(); }

  /// k! c_k.
  Poly egf_moment(int k) const;
  std::vector<Poly> moments() const;

  Series& operator+=(const Series& rhs);
  Series& operator-=(const Series& rhs);
  Series& operator*=(const Series& rhs);
  Series& operator*=(const Poly& scalar);

  friend Series operator+(Series a, const Series& b) { return a += b; }
  friend Series operator-(Series a, const Series& b) { return a -= b; }
  friend Series operator*(const Series& a, const Series& b);
  friend Series operator*(Series a, const Poly& c) { return a *= c; }
  friend Series operator*(const Poly& c, Series a) { return a *= c; }
  Series operator-() const;

  friend bool operator==(const Series&, const Series&) = default;

  /// Negative exponents need a unital series.
  Series pow_int(long n) const;
  /// 1/a for a unital series.
  Series reciprocal() const;
  /// d/dt, one order lower.
  Series derivative() const;
  /// Drops coefficients above `order`.
  Series truncate(int order) const;
  /// The series divided by t; requires c_0 = 0 and lowers the order by one.
  Series shift_down() const;
  /// The series times t; raises the order by one.
  Series shift_up() const;
  Series substitute(std::string_view var, const Poly& value) const;

 private:
  std::vector<Poly> coeffs_;
};

/// exp(h) for a delta series h.
Series exp(const Series& h);
/// log(f) for a unital series f.
Series log(const Series& f);
/// g(h(t)) for a delta series h.
Series compose(const Series& g, const Series& h);
/// The compositional inverse of a delta series with invertible linear term.
Series revert(const Series& h);

nlohmann::json to_json(const Series& s);
Series series_from_json(const nlohmann::json& j);

}  // namespace umbral
