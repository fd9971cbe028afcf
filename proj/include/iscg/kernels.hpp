#pragma once

#include <span>
#include <vector>

#include "iscg/allocation.hpp"
#include "iscg/coalition.hpp"

namespace iscg {

/// Non-increasing sequence of per-resource counts. Length is always the
/// resource count (empty resources contribute zeros); the sum is the
/// number of counted agents.
struct SortedKernel {
  std::vector<int> entries;

  int total() const;
  bool operator==(const SortedKernel&) const = default;
};

/// Cardinality-indexed member counts: entry s (1-based) holds the number
/// of coalition members sitting on resources of congestion n+1-s, so the
/// sequence runs from congestion n down to 1 and has length n.
struct WelfareKernel {
  std::vector<int> entries;

  int total() const;
  bool operator==(const WelfareKernel&) const = default;
};

/// k(a): sorted per-resource congestion counts.
SortedKernel kernel(const Allocation& a);

/// Same, directly from a congestion vector (used by enumeration-heavy
/// paths that never materialize an Allocation).
SortedKernel kernel_of_counts(std::vector<int> counts);

/// k(c,a): sorted per-resource coalition-member counts.
SortedKernel coalition_kernel(const Allocation& a, const Coalition& c);

/// w(c,a): coalition-member counts per congestion level, highest first.
WelfareKernel welfare_kernel(const Allocation& a, const Coalition& c);

/// Strict lexicographic order on equal-length integer sequences.
bool lex_less(std::span<const int> u, std::span<const int> v);

/// Two-tier balance-dominance test for a partition structure C:
/// x dominates y if k(x) < k(y) lexicographically, or the kernels tie
/// and every coalition kernel of x is lex-<= with at least one strict.
/// Smaller is better throughout.
bool balance_dominates(const Allocation& x, const Allocation& y,
                       const CoalitionStructure& C);

/// Welfare-dominance for a single coalition: w(c,x) lex-< w(c,y).
bool welfare_dominates(const Allocation& x, const Allocation& y, const Coalition& c);

}  // namespace iscg
