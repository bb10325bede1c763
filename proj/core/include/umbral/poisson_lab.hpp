#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "umbral/rational.hpp"

namespace umbral::lab {

/// Finite discrete distribution with exact probabilities.
class DiscreteDist {
 public:
  /// Probabilities must be positive and sum to exactly one. A parameter
  /// distribution additionally needs nonnegative values. InvalidDistribution
  /// otherwise.
  DiscreteDist(std::vector<std::pair<Rational, Rational>> support, bool parameter = false);

  /// "v:p,v:p,..." with rational v and p, e.g. "1:1/2,2:1/2".
  static DiscreteDist parse(std::string_view text, bool parameter = false);
  static DiscreteDist point(const Rational& value);

  const std::vector<std::pair<Rational, Rational>>& support() const noexcept { return support_; }
  /// E[X^k].
  Rational moment(int k) const;
  std::string to_string() const;

  /// One draw by inversion of the cumulative probabilities.
  double draw(double u) const noexcept;

 private:
  std::vector<std::pair<Rational, Rational>> support_;
  std::vector<double> values_;
  std::vector<double> cumulative_;
};

enum class ModelKind { Poisson, Compound, Randomized, RandomizedCompound };

struct Model {
  ModelKind kind = ModelKind::Poisson;
  Rational lambda = 1;
  std::optional<DiscreteDist> jumps;
  std::optional<DiscreteDist> param;

  static Model poisson(const Rational& lambda);
  static Model compound(const Rational& lambda, DiscreteDist jumps);
  static Model randomized(DiscreteDist param);
  static Model randomized_compound(DiscreteDist param, DiscreteDist jumps);

  /// By name ("poisson", "compound", "randomized", "randomized_compound")
  /// with the arguments that model needs. InvalidArgument when one is
  /// missing, InvalidDistribution when a value is out of range.
  static Model parse(std::string_view kind, const std::optional<std::string>& lambda,
                     const std::optional<std::string>& jumps, const std::optional<std::string>& param);

  std::string describe() const;
};

std::string_view to_string(ModelKind kind) noexcept;

/// Poisson parameters (lambda, or every parameter value) must not exceed
/// this; sequential inversion underflows e^{-lambda} far beyond it.
inline constexpr int kMaxLambda = 16;
inline constexpr int kMaxOrder = 6;
inline constexpr double kDefaultTolerance = 8.0;
/// Draws per sub-stream. Chunk i uses SplitMix64::derive(seed, i).
inline constexpr std::uint64_t kChunkSize = 65536;

/// n draws. Deterministic in (model, n, seed) whatever the thread count.
std::vector<double> sample(const Model& model, std::uint64_t n, std::uint64_t seed, unsigned threads = 0);

/// E[X^k] for k <= max_order, computed with umbrae: Phi_k(lambda) from
/// lambda.bell, partition moments for compound, a.bell for randomized and
/// the composition umbra for randomized compound.
std::vector<Rational> exact_moments(const Model& model, int max_order);

struct MomentRow {
  int k = 0;
  Rational exact;
  double empirical = 0;
  double standard_error = 0;
  double z = 0;
  bool pass = false;
};

struct MomentComparison {
  std::string model;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 0;
  double tolerance = kDefaultTolerance;
  std::vector<MomentRow> rows;

  bool pass() const noexcept;
};

/// Rows k = 1..max_order. max_order must be in 1..kMaxOrder.
MomentComparison compare(const Model& model, std::uint64_t n, std::uint64_t seed, int max_order,
                         double tolerance = kDefaultTolerance, unsigned threads = 0);

/// Same, against samples produced elsewhere.
MomentComparison compare_samples(const Model& model, std::span<const double> samples, std::uint64_t seed,
                                 int max_order, double tolerance = kDefaultTolerance);

nlohmann::json to_json(const MomentComparison& c);

}  // namespace umbral::lab
