#include "umbral/poisson_lab.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <limits>
#include <thread>

#include "umbral/auxiliary_ops.hpp"
#include "umbral/error.hpp"
#include "umbral/rng.hpp"
#include "umbral/workspace.hpp"

namespace umbral::lab {

namespace {

Error invalid(const std::string& message) { return Error(ErrorCode::InvalidDistribution, message); }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Rational rational_field(std::string_view text, std::string_view what) {
  try {
    return parse_rational(trim(text));
  } catch (const Error&) {
    throw invalid("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
}

void check_lambda(const Rational& lambda) {
  if (lambda <= 0) throw invalid("lambda must be positive, got " + umbral::to_string(lambda));
  if (lambda > kMaxLambda) {
    throw invalid("lambda " + umbral::to_string(lambda) + " exceeds " + std::to_string(kMaxLambda));
  }
}

// Sequential inversion: walk the cumulative Poisson probabilities.
std::uint64_t poisson_draw(double lambda, SplitMix64& rng) {
  if (lambda == 0) return 0;
  const double u = rng.unit();
  double p = std::exp(-lambda);
  double cumulative = p;
  std::uint64_t k = 0;
  while (u >= cumulative) {
    ++k;
    p *= lambda / static_cast<double>(k);
    cumulative += p;
    if (p == 0 && u >= cumulative) break;  // u beyond the representable tail
  }
  return k;
}

double draw(const Model& m, double lambda, SplitMix64& rng) {
  switch (m.kind) {
    case ModelKind::Poisson:
      return static_cast<double>(poisson_draw(lambda, rng));
    case ModelKind::Compound: {
      const auto count = poisson_draw(lambda, rng);
      double s = 0;
      for (std::uint64_t i = 0; i < count; ++i) s += m.jumps->draw(rng.unit());
      return s;
    }
    case ModelKind::Randomized:
      return static_cast<double>(poisson_draw(m.param->draw(rng.unit()), rng));
    case ModelKind::RandomizedCompound: {
      const auto count = poisson_draw(m.param->draw(rng.unit()), rng);
      double s = 0;
      for (std::uint64_t i = 0; i < count; ++i) s += m.jumps->draw(rng.unit());
      return s;
    }
  }
  return 0;
}

std::vector<Poly> poly_moments(const DiscreteDist& d, int order) {
  std::vector<Poly> out;
  for (int k = 0; k <= order; ++k) out.emplace_back(d.moment(k));
  return out;
}

}  // namespace

DiscreteDist::DiscreteDist(std::vector<std::pair<Rational, Rational>> support, bool parameter)
    : support_(std::move(support)) {
  if (support_.empty()) throw invalid("empty distribution");
  Rational total = 0;
  double cumulative = 0;
  for (const auto& [v, p] : support_) {
    if (p <= 0) throw invalid("probability " + umbral::to_string(p) + " is not positive");
    if (parameter && v < 0) throw invalid("parameter value " + umbral::to_string(v) + " is negative");
    if (parameter && v > kMaxLambda) {
      throw invalid("parameter value " + umbral::to_string(v) + " exceeds " + std::to_string(kMaxLambda));
    }
    total += p;
    cumulative += p.get_d();
    values_.push_back(v.get_d());
    cumulative_.push_back(cumulative);
  }
  if (total != 1) throw invalid("probabilities sum to " + umbral::to_string(total) + ", not 1");
  cumulative_.back() = std::numeric_limits<double>::infinity();
}

DiscreteDist DiscreteDist::parse(std::string_view text, bool parameter) {
  std::vector<std::pair<Rational, Rational>> support;
  while (!trim(text).empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw invalid("expected value:probability, got '" + std::string(item) + "'");
    support.emplace_back(rational_field(item.substr(0, colon), "value"),
                         rational_field(item.substr(colon + 1), "probability"));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return DiscreteDist(std::move(support), parameter);
}

DiscreteDist DiscreteDist::point(const Rational& value) { return DiscreteDist({{value, Rational(1)}}); }

Rational DiscreteDist::moment(int k) const {
  Rational s = 0;
  for (const auto& [v, p] : support_) s += p * umbral::pow(v, static_cast<unsigned>(k));
  return s;
}

std::string DiscreteDist::to_string() const {
  std::string out;
  for (const auto& [v, p] : support_) {
    if (!out.empty()) out += ',';
    out += umbral::to_string(v) + ':' + umbral::to_string(p);
  }
  return out;
}

double DiscreteDist::draw(double u) const noexcept {
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  return values_[static_cast<std::size_t>(it - cumulative_.begin())];
}

Model Model::poisson(const Rational& lambda) {
  check_lambda(lambda);
  return {ModelKind::Poisson, lambda, std::nullopt, std::nullopt};
}

Model Model::compound(const Rational& lambda, DiscreteDist jumps) {
  check_lambda(lambda);
  return {ModelKind::Compound, lambda, std::move(jumps), std::nullopt};
}

Model Model::randomized(DiscreteDist param) {
  for (const auto& [v, p] : param.support()) {
    if (v < 0 || v > kMaxLambda) throw invalid("parameter value " + umbral::to_string(v) + " out of range");
  }
  return {ModelKind::Randomized, 1, std::nullopt, std::move(param)};
}

Model Model::randomized_compound(DiscreteDist param, DiscreteDist jumps) {
  Model m = randomized(std::move(param));
  m.kind = ModelKind::RandomizedCompound;
  m.jumps = std::move(jumps);
  return m;
}

Model Model::parse(std::string_view kind, const std::optional<std::string>& lambda,
                   const std::optional<std::string>& jumps, const std::optional<std::string>& param) {
  auto need = [&](const std::optional<std::string>& v, const char* flag) -> const std::string& {
    if (!v) throw Error(ErrorCode::InvalidArgument, "model " + std::string(kind) + " needs " + flag);
    return *v;
  };
  auto rate = [&] { return lambda ? rational_field(*lambda, "lambda") : Rational(1); };
  if (kind == "poisson") return poisson(rate());
  if (kind == "compound") return compound(rate(), DiscreteDist::parse(need(jumps, "--jumps")));
  if (kind == "randomized") return randomized(DiscreteDist::parse(need(param, "--param"), true));
  if (kind == "randomized_compound") {
    return randomized_compound(DiscreteDist::parse(need(param, "--param"), true),
                               DiscreteDist::parse(need(jumps, "--jumps")));
  }
  throw Error(ErrorCode::InvalidArgument, "unknown model '" + std::string(kind) +
                                              "' (poisson, compound, randomized, randomized_compound)");
}

std::string_view to_string(ModelKind kind) noexcept {
  switch (kind) {
    case ModelKind::Poisson: return "poisson";
    case ModelKind::Compound: return "compound";
    case ModelKind::Randomized: return "randomized";
    case ModelKind::RandomizedCompound: return "randomized_compound";
  }
  return "?";
}

std::string Model::describe() const {
  const std::string name(to_string(kind));
  switch (kind) {
    case ModelKind::Poisson: return name + "(" + umbral::to_string(lambda) + ")";
    case ModelKind::Compound: return name + "(" + umbral::to_string(lambda) + ", " + jumps->to_string() + ")";
    case ModelKind::Randomized: return name + "(" + param->to_string() + ")";
    case ModelKind::RandomizedCompound: return name + "(" + param->to_string() + ", " + jumps->to_string() + ")";
  }
  return name;
}

std::vector<double> sample(const Model& model, std::uint64_t n, std::uint64_t seed, unsigned threads) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "need at least one sample");
  std::vector<double> out(n);
  const std::uint64_t chunks = (n + kChunkSize - 1) / kChunkSize;
  const double lambda = model.lambda.get_d();
  auto run_chunk = [&](std::uint64_t c) {
    SplitMix64 rng = SplitMix64::derive(seed, c);
    const std::uint64_t end = std::min(n, (c + 1) * kChunkSize);
    for (std::uint64_t i = c * kChunkSize; i < end; ++i) out[i] = draw(model, lambda, rng);
  };
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    return out;
  }
  std::atomic<std::uint64_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::uint64_t c = next++; c < chunks; c = next++) run_chunk(c);
    });
  }
  pool.clear();
  return out;
}

std::vector<Rational> exact_moments(const Model& model, int max_order) {
  Workspace ws(max_order);
  AtomId x;
  switch (model.kind) {
    case ModelKind::Poisson:
      x = bell_umbra(ws, DotLeft::scalar(Poly(model.lambda)));
      break;
    case ModelKind::Compound:
      x = partition_umbra(ws, ws.define_umbra("jump", poly_moments(*model.jumps, max_order)),
                          DotLeft::scalar(Poly(model.lambda)));
      break;
    case ModelKind::Randomized:
      x = dot(ws, DotLeft::umbra(ws.define_umbra("param", poly_moments(*model.param, max_order))), bell_umbra(ws));
      break;
    case ModelKind::RandomizedCompound:
      x = composition_umbra(ws, ws.define_umbra("param", poly_moments(*model.param, max_order)),
                            ws.define_umbra("jump", poly_moments(*model.jumps, max_order)));
      break;
  }
  std::vector<Rational> out;
  for (const auto& m : ws.atom(x).moments) out.push_back(*m.constant());
  return out;
}

bool MomentComparison::pass() const noexcept {
  return !rows.empty() && std::all_of(rows.begin(), rows.end(), [](const MomentRow& r) { return r.pass; });
}

MomentComparison compare_samples(const Model& model, std::span<const double> samples, std::uint64_t seed,
                                 int max_order, double tolerance) {
  if (max_order < 1 || max_order > kMaxOrder) {
    throw Error(ErrorCode::InvalidArgument, "max order must be in 1.." + std::to_string(kMaxOrder));
  }
  if (samples.size() < 2) throw Error(ErrorCode::InvalidArgument, "need at least two samples");
  const auto exact = exact_moments(model, max_order);
  // Power sums up to 2 * max_order, accumulated in sample order.
  std::vector<long double> sums(2 * static_cast<std::size_t>(max_order) + 1, 0.0L);
  for (double x : samples) {
    long double p = 1;
    for (std::size_t j = 1; j < sums.size(); ++j) {
      p *= x;
      sums[j] += p;
    }
  }
  const auto n = static_cast<long double>(samples.size());
  MomentComparison out;
  out.model = model.describe();
  out.n_samples = samples.size();
  out.seed = seed;
  out.tolerance = tolerance;
  for (int k = 1; k <= max_order; ++k) {
    MomentRow row;
    row.k = k;
    row.exact = exact[k];
    const long double mean = sums[k] / n;
    const long double var = std::max(0.0L, (sums[2 * k] / n - mean * mean) * n / (n - 1));
    row.empirical = static_cast<double>(mean);
    row.standard_error = static_cast<double>(std::sqrt(var / n));
    const double diff = row.empirical - row.exact.get_d();
    if (row.standard_error > 0) {
      row.z = diff / row.standard_error;
    } else {
      row.z = diff == 0 ? 0 : std::copysign(std::numeric_limits<double>::infinity(), diff);
    }
    row.pass = std::abs(row.z) <= tolerance;
    out.rows.push_back(row);
  }
  return out;
}

MomentComparison compare(const Model& model, std::uint64_t n, std::uint64_t seed, int max_order, double tolerance,
                         unsigned threads) {
  if (max_order < 1 || max_order > kMaxOrder) {
    throw Error(ErrorCode::InvalidArgument, "max order must be in 1.." + std::to_string(kMaxOrder));
  }
  const auto samples = sample(model, n, seed, threads);
  return compare_samples(model, samples, seed, max_order, tolerance);
}

nlohmann::json to_json(const MomentComparison& c) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : c.rows) {
    rows.push_back({{"k", r.k},
                    {"exact", umbral::to_string(r.exact)},
                    {"empirical", r.empirical},
                    {"standard_error", r.standard_error},
                    {"z", std::isfinite(r.z) ? nlohmann::json(r.z) : nlohmann::json(r.z > 0 ? "inf" : "-inf")},
                    {"pass", r.pass}});
  }
  return {{"model", c.model}, {"n_samples", c.n_samples}, {"seed", c.seed}, {"tolerance", c.tolerance},
          {"rows", rows}, {"pass", c.pass()}};
}

}  // namespace umbral::lab
