#pragma once

#include <optional>
#include <string>
#include <variant>

#include "umbral/workspace.hpp"

namespace umbral {

/// Left operand of the point product n.a, x.a or b.a. Int may be negative.
/// Scalar generalizes a single indeterminate to any polynomial in declared
/// indeterminates, e.g. (x + y).a or (x*y).a.
struct DotLeft {
  std::variant<long, Poly, AtomId> value;

  static DotLeft integer(long n) { return {n}; }
  static DotLeft scalar(Poly p) { return {std::move(p)}; }
  static DotLeft indeterminate(std::string_view name) { return {Poly::variable(name)}; }
  static DotLeft umbra(AtomId id) { return {id}; }
};

/// Display name of an operand, parenthesized unless it is a single token.
std::string operand_name(const Workspace& ws, AtomId id);
std::string dot_left_name(const Workspace& ws, const DotLeft& left);

/// Canonical names given to constructed atoms. The expression parser binds
/// the same strings, so rendering an atom and parsing it back is lossless.
namespace names {
std::string dot(const Workspace& ws, const DotLeft& left, AtomId alpha);
std::string point_power(const Workspace& ws, AtomId alpha, long n);
std::string inverse(const Workspace& ws, AtomId alpha);
std::string bell(const Workspace& ws, const std::optional<DotLeft>& scale);
std::string partition(const Workspace& ws, AtomId alpha, const std::optional<DotLeft>& scale);
std::string composition(const Workspace& ws, AtomId gamma, AtomId alpha);
std::string alpha_bar(const Workspace& ws, AtomId alpha);
}  // namespace names

/// Moments sum_i L_i B_{k,i}(a) with L_i = (n)_i, (x)_i or E[(b)_i]; the
/// series is f^n, exp(x log f) or g(log f).
AtomId dot(Workspace& ws, const DotLeft& left, AtomId alpha, std::optional<std::string> name = std::nullopt);

/// Moments a_k^n; the series is built from them.
AtomId point_power(Workspace& ws, AtomId alpha, long n, std::optional<std::string> name = std::nullopt);

/// Series 1/f; moments sum_i (-1)^i i! B_{k,i}(a).
AtomId inverse_umbra(Workspace& ws, AtomId alpha, std::optional<std::string> name = std::nullopt);

/// Without scale: Bell numbers and exp(e^t - 1). With scale x: Phi_k(x) and
/// exp(x (e^t - 1)).
AtomId bell_umbra(Workspace& ws, const std::optional<DotLeft>& scale = std::nullopt,
                  std::optional<std::string> name = std::nullopt);

/// b.a: moments Y_n(a) (or sum_k x^k B_{n,k}(a) with scale x) and series
/// exp(f - 1) (or exp(x (f - 1))).
AtomId partition_umbra(Workspace& ws, AtomId alpha, const std::optional<DotLeft>& scale = std::nullopt,
                       std::optional<std::string> name = std::nullopt);

/// g.b.a: moments sum_k g_k B_{n,k}(a) and series g(f - 1).
AtomId composition_umbra(Workspace& ws, AtomId gamma, AtomId alpha, std::optional<std::string> name = std::nullopt);

/// Moments a_{n+1} / (a_1 (n+1)), so that f(t) - 1 = a_1 t e^{bar t}. One
/// order lower than alpha since a_{N+1} is unknown.
AtomId alpha_bar(Workspace& ws, AtomId alpha, std::optional<std::string> name = std::nullopt);

/// sum_k S(n,k) a_k.
Poly exponential_umbral_moment(const Workspace& ws, AtomId alpha, int n);

/// E[(b)_i] = sum_j s(i,j) b_j.
Poly falling_factorial_moment(const Workspace& ws, AtomId beta, int i);

}  // namespace umbral
