#include "umbral/combinatorics.hpp"

#include <algorithm>
#include <mutex>

#include "umbral/error.hpp"
#include "umbral/series.hpp"

namespace umbral::combinatorics {

namespace {

// Triangles grow on demand; readers copy values out under the lock.
struct StirlingTables {
  std::mutex mutex;
  std::vector<std::vector<Rational>> first{{Rational(1)}};
  std::vector<std::vector<Rational>> second{{Rational(1)}};
  std::vector<Rational> bell{Rational(1)};

  void grow_to(int n) {
    while (static_cast<int>(first.size()) <= n) {
      const int m = static_cast<int>(first.size());  // row being built
      const auto& pf = first.back();
      const auto& ps = second.back();
      std::vector<Rational> rf(m + 1), rs(m + 1);
      for (int k = 0; k <= m; ++k) {
        const Rational left_f = k >= 1 ? pf[k - 1] : Rational(0);
        const Rational keep_f = k < m ? pf[k] : Rational(0);
        // s(m,k) = s(m-1,k-1) - (m-1) s(m-1,k)
        rf[k] = left_f - Rational(m - 1) * keep_f;
        const Rational left_s = k >= 1 ? ps[k - 1] : Rational(0);
        const Rational keep_s = k < m ? ps[k] : Rational(0);
        // S(m,k) = S(m-1,k-1) + k S(m-1,k)
        rs[k] = left_s + Rational(k) * keep_s;
      }
      first.push_back(std::move(rf));
      second.push_back(std::move(rs));
    }
    while (static_cast<int>(bell.size()) <= n) {
      const int m = static_cast<int>(bell.size()) - 1;
      // B_{m+1} = sum_k C(m,k) B_k
      Rational next;
      for (int k = 0; k <= m; ++k) next += binomial(static_cast<unsigned>(m), static_cast<unsigned>(k)) * bell[k];
      bell.push_back(next);
    }
  }
};

StirlingTables& tables() {
  static StirlingTables t;
  return t;
}

Series jump_series(int order, std::span<const Poly> a) {
  std::vector<Poly> coeffs(static_cast<std::size_t>(order) + 1);
  for (int j = 1; j <= order && j - 1 < static_cast<int>(a.size()); ++j) {
    coeffs[j] = a[j - 1] / factorial(static_cast<unsigned>(j));
  }
  return Series::make(std::move(coeffs), order);
}

}  // namespace

Rational stirling(StirlingKind kind, int n, int k) {
  if (n < 0 || k < 0 || k > n) {
    throw Error(ErrorCode::IndexError, "Stirling index (" + std::to_string(n) + ", " + std::to_string(k) + ")");
  }
  auto& t = tables();
  std::lock_guard lock(t.mutex);
  t.grow_to(n);
  return kind == StirlingKind::Second ? t.second[n][k] : t.first[n][k];
}

Rational bell_number(int n) {
  if (n < 0) throw Error(ErrorCode::IndexError, "Bell number index " + std::to_string(n));
  auto& t = tables();
  std::lock_guard lock(t.mutex);
  t.grow_to(n);
  return t.bell[n];
}

std::vector<std::vector<Poly>> partial_bell_table(int max_n, std::span<const Poly> a) {
  if (max_n < 0) throw Error(ErrorCode::IndexError, "negative order for partial Bell table");
  if (static_cast<int>(a.size()) < max_n) {
    throw Error(ErrorCode::IndexError, "partial Bell table of order " + std::to_string(max_n) + " needs " +
                                           std::to_string(max_n) + " arguments, got " +
                                           std::to_string(a.size()));
  }
  std::vector<std::vector<Poly>> table(static_cast<std::size_t>(max_n) + 1);
  for (int n = 0; n <= max_n; ++n) table[n].resize(static_cast<std::size_t>(n) + 1);
  table[0][0] = Poly(1);
  if (max_n == 0) return table;
  const Series jumps = jump_series(max_n, a);
  Series power = Series::constant(Poly(1), max_n);
  for (int k = 1; k <= max_n; ++k) {
    power *= jumps;
    const Rational inv_kfact = 1 / factorial(static_cast<unsigned>(k));
    for (int n = k; n <= max_n; ++n) {
      table[n][k] = power.egf_moment(n) * inv_kfact;
    }
  }
  return table;
}

Poly partial_bell(int n, int k, std::span<const Poly> a) {
  if (k < 1 || k > n) {
    throw Error(ErrorCode::IndexError, "partial Bell index (" + std::to_string(n) + ", " + std::to_string(k) + ")");
  }
  if (static_cast<int>(a.size()) < n - k + 1) {
    throw Error(ErrorCode::IndexError, "B_{" + std::to_string(n) + "," + std::to_string(k) + "} needs " +
                                           std::to_string(n - k + 1) + " arguments");
  }
  // Only a_1..a_{n-k+1} can contribute to the coefficient of t^n.
  const int used = n - k + 1;
  const Series jumps = jump_series(n, a.first(static_cast<std::size_t>(used)));
  return jumps.pow_int(k).egf_moment(n) / factorial(static_cast<unsigned>(k));
}

Poly complete_bell(int n, std::span<const Poly> a) {
  if (n < 0) throw Error(ErrorCode::IndexError, "complete Bell index " + std::to_string(n));
  if (n == 0) return Poly(1);
  if (static_cast<int>(a.size()) < n) {
    throw Error(ErrorCode::IndexError, "Y_" + std::to_string(n) + " needs " + std::to_string(n) + " arguments");
  }
  const auto table = partial_bell_table(n, a.first(static_cast<std::size_t>(n)));
  Poly sum;
  for (int k = 1; k <= n; ++k) sum += table[n][k];
  return sum;
}

Poly exponential_poly(int n, std::string_view var) {
  if (n < 0) throw Error(ErrorCode::IndexError, "exponential polynomial index " + std::to_string(n));
  Poly out;
  for (int k = 0; k <= n; ++k) {
    out += Poly::variable(var, static_cast<unsigned>(k)) * stirling(StirlingKind::Second, n, k);
  }
  return out;
}

Rational bernoulli_number(int n) {
  if (n < 0) throw Error(ErrorCode::IndexError, "Bernoulli index " + std::to_string(n));
  // (e^t - 1)/t is unital; its reciprocal is t/(e^t - 1).
  const Series quotient = (Series::exponential(n + 1) - Series::constant(Poly(1), n + 1)).shift_down();
  return *quotient.reciprocal().egf_moment(n).constant();
}

std::vector<PartitionWeight> enumerate_partitions(int n) {
  if (n < 0) throw Error(ErrorCode::IndexError, "negative set size");
  if (n > kMaxEnumeration) {
    throw Error(ErrorCode::TooLarge, "set partition enumeration is capped at n = " +
                                         std::to_string(kMaxEnumeration));
  }
  std::map<std::vector<int>, Integer> counts;
  if (n == 0) {
    counts[{}] = 1;
  } else {
    // Restricted growth strings: g[0] = 0, g[i] <= 1 + max(g[0..i-1]).
    std::vector<int> g(n, 0), prefix_max(n, 0);
    while (true) {
      std::vector<int> sizes(static_cast<std::size_t>(prefix_max[n - 1]) + 1, 0);
      for (int v : g) ++sizes[v];
      std::sort(sizes.begin(), sizes.end(), std::greater<>());
      ++counts[sizes];
      int i = n - 1;
      while (i > 0 && g[i] == prefix_max[i - 1] + 1) --i;
      if (i == 0) break;
      ++g[i];
      prefix_max[i] = std::max(prefix_max[i - 1], g[i]);
      for (int j = i + 1; j < n; ++j) {
        g[j] = 0;
        prefix_max[j] = prefix_max[i];
      }
    }
  }
  std::vector<PartitionWeight> out;
  out.reserve(counts.size());
  for (auto& [sizes, count] : counts) out.push_back({sizes, count});
  return out;
}

}  // namespace umbral::combinatorics
