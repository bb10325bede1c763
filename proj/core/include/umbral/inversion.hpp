#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "umbral/workspace.hpp"

namespace umbral {

struct InversionReport {
  int order = 0;
  std::vector<Poly> gamma_moments_umbral;
  std::vector<Poly> gamma_moments_oracle;
  bool agree = false;

  /// Moments of the composition umbra of gamma and alpha; expected 1, 1, 0, ...
  std::vector<Poly> chi_moments;
  bool chi_is_identity = false;
  /// chi^n = sum_k g_k B_{n,k}(a), expanded term by term.
  bool partial_bell_expansion_holds = false;
  /// chi^n = sum_k C(n,k) a_1^k g_k E[(k.abar)^{n-k}].
  bool lemma_expansion_holds = false;
  /// chi^n = sum_k C(n,k) E[chi (chi - k.abar)^{k-1}] E[(k.abar)^{n-k}].
  bool abel_expansion_holds = false;
  /// g[f(t) - 1] = 1 + t.
  bool composes_to_identity = false;

  bool ok() const noexcept {
    return agree && chi_is_identity && partial_bell_expansion_holds && lemma_expansion_holds &&
           abel_expansion_holds && composes_to_identity;
  }
};

/// gamma with gamma^k = E[(-k.abar)^{k-1}] / a_1^k. The moments come from
/// the partial Bell expansion of the negative point multiple; the series
/// from the coefficients of EGF(abar)^{-k}. NonUnitLinearMoment when a_1
/// has no reciprocal.
AtomId revert_umbral(Workspace& ws, AtomId alpha, std::optional<std::string> name = std::nullopt);

/// The atom with series 1 + revert(f - 1).
AtomId revert_oracle(Workspace& ws, AtomId alpha, std::optional<std::string> name = std::nullopt);

/// Runs both inversions on a scratch copy of `ws` and checks the identities
/// used in the proof. `order` must not exceed alpha's order.
InversionReport cross_check(const Workspace& ws, AtomId alpha, int order);

nlohmann::json to_json(const InversionReport& r);

}  // namespace umbral
