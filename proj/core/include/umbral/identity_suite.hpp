#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace umbral {

struct IdentityParams {
  /// Workspace order; identities are compared for every power up to it.
  int n = 8;
  int trials = 10;
  std::uint64_t seed = 0;
  /// Restricts the Stirling-Bernoulli entry to a single k.
  std::optional<int> k;
};

struct IdentityDescriptor {
  std::string id;
  /// The identity in umbral notation.
  std::string anchor;
  /// Passes when the stated identity is shown to fail.
  bool counterexample = false;
  IdentityParams defaults;
};

struct IdentityCase {
  std::string id;
  std::string anchor;
  bool counterexample = false;
  IdentityParams params;
  bool pass = false;
  std::size_t comparisons = 0;
  /// Labels of the statements exercised, in order.
  std::vector<std::string> statements;
  /// First failing comparison: inputs and both evaluated sides.
  std::optional<nlohmann::json> witness;
  nlohmann::json details = nlohmann::json::object();
};

/// The fixed catalog, in a stable order.
const std::vector<IdentityDescriptor>& list_identities();

/// Runs one entry. Besides catalog ids, "prop1_i" ... "prop1_v" and
/// "cor1_i" ... "cor1_v" run a single statement. UnknownIdentity otherwise.
IdentityCase check(const std::string& id, const IdentityParams& params);
IdentityCase check(const std::string& id);

/// Every catalog entry at its defaults, with `seed` replacing each default
/// seed when given. Entries run on up to `threads` threads (0 picks the
/// hardware concurrency); results are in catalog order either way.
std::vector<IdentityCase> check_all(std::optional<std::uint64_t> seed = std::nullopt, unsigned threads = 0);

/// True when the entry should fail a run: a failed identity. A designed
/// counterexample never does.
bool counts_as_failure(const IdentityCase& c) noexcept;

nlohmann::json to_json(const IdentityCase& c);

}  // namespace umbral
