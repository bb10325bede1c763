#pragma once

#include <map>
#include <span>
#include <vector>

#include "umbral/poly.hpp"
#include "umbral/rational.hpp"

namespace umbral::combinatorics {

enum class StirlingKind { FirstSigned, Second };

/// s(n,k) or S(n,k); IndexError outside 0 <= k <= n.
Rational stirling(StirlingKind kind, int n, int k);

Rational bell_number(int n);

/// B_{n,k}(a_1, ..., a_{n-k+1}), with a[0] holding a_1. Computed from the
/// coefficients of (f(t) - 1)^k / k! where f - 1 = sum a_j t^j / j!.
Poly partial_bell(int n, int k, std::span<const Poly> a);

/// Every B_{n,k} for 0 <= k <= n <= max_n in one pass; table[n][k].
/// B_{0,0} = 1 and B_{n,0} = 0 for n > 0.
std::vector<std::vector<Poly>> partial_bell_table(int max_n, std::span<const Poly> a);

/// Y_n(a_1, ..., a_n); Y_0 = 1.
Poly complete_bell(int n, std::span<const Poly> a);

/// Phi_n(x) = sum_k S(n,k) x^k in the named indeterminate.
Poly exponential_poly(int n, std::string_view var = "x");

/// n-th EGF moment of t / (e^t - 1), so B_1 = -1/2.
Rational bernoulli_number(int n);

inline constexpr int kMaxEnumeration = 12;

/// Block-size multiset of a set partition, sizes in descending order, with
/// the number of set partitions sharing it.
struct PartitionWeight {
  std::vector<int> block_sizes;
  Integer count;

  friend bool operator==(const PartitionWeight&, const PartitionWeight&) = default;
};

/// All set partitions of {1..n} grouped by block structure, by brute-force
/// enumeration of restricted growth strings. TooLarge beyond n = 12.
std::vector<PartitionWeight> enumerate_partitions(int n);

}  // namespace umbral::combinatorics
