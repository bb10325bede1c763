#pragma once

// Reference computations used only by the tests. Each one takes a different
// route from the library: plain rational vectors instead of Series, set
// partitions listed block by block, cumulant recursions for Poisson laws.

#include <cstddef>
#include <functional>
#include <vector>

#include "umbral/poly.hpp"
#include "umbral/rational.hpp"
#include "umbral/rng.hpp"

namespace oracle {

using umbral::Poly;
using umbral::Rational;
using Vec = std::vector<Rational>;

inline Rational fact(int n) {
  Rational r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

inline Rational choose(int n, int k) {
  if (k < 0 || k > n) return 0;
  return fact(n) / (fact(k) * fact(n - k));
}

/// Moments of a + b for uncorrelated a, b: sum_i C(n,i) a_i b_{n-i}.
inline Vec binomial_convolution(const Vec& a, const Vec& b) {
  Vec out(std::min(a.size(), b.size()));
  for (std::size_t n = 0; n < out.size(); ++n) {
    for (std::size_t i = 0; i <= n; ++i) out[n] += choose(static_cast<int>(n), static_cast<int>(i)) * a[i] * b[n - i];
  }
  return out;
}

/// Moments of a'+a''+...(n copies); n = 0 gives the augmentation.
inline Vec convolution_power(const Vec& a, int n) {
  Vec out(a.size());
  out[0] = 1;
  for (int i = 0; i < n; ++i) out = binomial_convolution(out, a);
  return out;
}

/// Ordinary coefficient product truncated to the shorter length.
inline Vec ogf_mul(const Vec& a, const Vec& b) {
  Vec out(std::min(a.size(), b.size()));
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (std::size_t j = 0; i + j < out.size(); ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

/// g(h(t)) by Horner's rule, h[0] = 0.
inline Vec ogf_compose(const Vec& g, const Vec& h) {
  Vec out(h.size());
  for (std::size_t i = g.size(); i-- > 0;) {
    out = ogf_mul(out, h);
    out[0] += g[i];
  }
  return out;
}

inline Vec to_ogf(const Vec& moments) {
  Vec out(moments.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = moments[k] / fact(static_cast<int>(k));
  return out;
}

inline Vec to_moments(const Vec& ogf) {
  Vec out(ogf.size());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = ogf[k] * fact(static_cast<int>(k));
  return out;
}

/// Compositional inverse of h (h[0] = 0, h[1] != 0) by fixed-point
/// iteration g <- g - (h(g) - t) / h[1], one new coefficient per pass.
inline Vec ogf_revert(const Vec& h) {
  const std::size_t n = h.size();
  Vec g(n);
  if (n > 1) g[1] = 1 / h[1];
  for (std::size_t pass = 2; pass < n + 1; ++pass) {
    Vec r = ogf_compose(h, g);
    if (n > 1) r[1] -= 1;
    for (std::size_t k = 0; k < n; ++k) g[k] -= r[k] / h[1];
  }
  return g;
}

/// Every set partition of {0..n-1}, as lists of blocks.
inline std::vector<std::vector<std::vector<int>>> set_partitions(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<std::vector<int>> blocks;
  std::function<void(int)> place = [&](int i) {
    if (i == n) {
      out.push_back(blocks);
      return;
    }
    // Indices, not references: the recursion grows `blocks`.
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      blocks[j].push_back(i);
      place(i + 1);
      blocks[j].pop_back();
    }
    blocks.push_back({i});
    place(i + 1);
    blocks.pop_back();
  };
  place(0);
  return out;
}

/// B_{n,k}(a) as the sum over k-block set partitions of prod a_{|block|};
/// a[0] holds a_1.
inline Poly partial_bell_by_partitions(int n, int k, const std::vector<Poly>& a) {
  Poly sum;
  for (const auto& p : set_partitions(n)) {
    if (static_cast<int>(p.size()) != k) continue;
    Poly term(1);
    for (const auto& b : p) term *= a[b.size() - 1];
    sum += term;
  }
  return sum;
}

/// Bell numbers from the Bell triangle.
inline Vec bell_triangle(int max_n) {
  Vec out{Rational(1)};
  Vec row{Rational(1)};
  for (int n = 1; n <= max_n; ++n) {
    Vec next{row.back()};
    for (const auto& v : row) next.push_back(next.back() + v);
    out.push_back(next.front());
    row = next;
  }
  return out;
}

/// Coefficients of x(x-1)...(x-n+1): the signed Stirling numbers s(n, k).
inline Vec falling_factorial_coefficients(int n) {
  Vec c{Rational(1)};
  for (int j = 0; j < n; ++j) {
    Vec next(c.size() + 1);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= j * c[i];
    }
    c = next;
  }
  return c;
}

/// Raw moments from cumulants: m_{n+1} = sum_i C(n,i) kappa_{i+1} m_{n-i}.
inline Vec moments_from_cumulants(const Vec& kappa, int max_n) {
  Vec m{Rational(1)};
  for (int n = 0; n < max_n; ++n) {
    Rational s = 0;
    for (int i = 0; i <= n; ++i) s += choose(n, i) * kappa[i + 1] * m[n - i];
    m.push_back(s);
  }
  return m;
}

/// Compound Poisson(lambda) with jump moments j: cumulants lambda * j_k.
inline Vec compound_poisson_moments(const Rational& lambda, const Vec& jump_moments, int max_n) {
  Vec kappa(jump_moments.size());
  for (std::size_t k = 1; k < kappa.size(); ++k) kappa[k] = lambda * jump_moments[k];
  return moments_from_cumulants(kappa, max_n);
}

inline Vec poisson_moments(const Rational& lambda, int max_n) {
  return compound_poisson_moments(lambda, Vec(static_cast<std::size_t>(max_n) + 1, Rational(1)), max_n);
}

inline Vec random_moments(umbral::SplitMix64& rng, int order) {
  Vec m{Rational(1)};
  for (int k = 1; k <= order; ++k) m.push_back(umbral::small_rational(rng));
  return m;
}

inline std::vector<Poly> polys(const Vec& v) { return {v.begin(), v.end()}; }

inline Vec rationals(const std::vector<Poly>& v) {
  Vec out;
  for (const auto& p : v) out.push_back(p.constant_term());
  return out;
}

}  // namespace oracle
