#include "iscg/kernels.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace iscg {

int SortedKernel::total() const {
  return std::accumulate(entries.begin(), entries.end(), 0);
}

int WelfareKernel::total() const {
  return std::accumulate(entries.begin(), entries.end(), 0);
}

SortedKernel kernel(const Allocation& a) { return kernel_of_counts(a.counts()); }

SortedKernel kernel_of_counts(std::vector<int> counts) {
  std::sort(counts.begin(), counts.end(), std::greater<int>());
  return SortedKernel{std::move(counts)};
}

SortedKernel coalition_kernel(const Allocation& a, const Coalition& c) {
  if (c.empty()) throw Error(Errc::empty_coalition, "coalition kernel of empty coalition");
  std::vector<int> counts(static_cast<std::size_t>(a.resource_count()), 0);
  for (AgentId j : c) ++counts[static_cast<std::size_t>(a.resource_of(j) - 1)];
  return kernel_of_counts(std::move(counts));
}

WelfareKernel welfare_kernel(const Allocation& a, const Coalition& c) {
  if (c.empty()) throw Error(Errc::empty_coalition, "welfare kernel of empty coalition");
  int n = a.agent_count();
  // per-congestion member tallies, then listed from congestion n down to 1
  std::vector<int> by_congestion(static_cast<std::size_t>(n) + 1, 0);
  for (AgentId j : c) ++by_congestion[static_cast<std::size_t>(cost(a, j))];
  std::vector<int> entries(static_cast<std::size_t>(n));
  for (int s = 1; s <= n; ++s)
    entries[static_cast<std::size_t>(s - 1)] = by_congestion[static_cast<std::size_t>(n + 1 - s)];
  return WelfareKernel{std::move(entries)};
}

bool lex_less(std::span<const int> u, std::span<const int> v) {
  if (u.size() != v.size()) {
    std::ostringstream os;
    os << "lexicographic comparison of lengths " << u.size() << " and " << v.size();
    throw Error(Errc::length_mismatch, os.str());
  }
  for (std::size_t t = 0; t < u.size(); ++t) {
    if (u[t] != v[t]) return u[t] < v[t];
  }
  return false;
}

namespace {

void require_same_game(const Allocation& x, const Allocation& y) {
  if (x.agent_count() != y.agent_count() || x.resource_count() != y.resource_count()) {
    std::ostringstream os;
    os << "allocations over different games: " << x.agent_count() << "x"
       << x.resource_count() << " vs " << y.agent_count() << "x" << y.resource_count();
    throw Error(Errc::length_mismatch, os.str());
  }
}

}  // namespace

bool balance_dominates(const Allocation& x, const Allocation& y,
                       const CoalitionStructure& C) {
  require_same_game(x, y);
  if (!C.is_partition())
    throw Error(Errc::not_a_partition, "balance dominance requires a partition structure");

  SortedKernel kx = kernel(x);
  SortedKernel ky = kernel(y);
  if (lex_less(kx.entries, ky.entries)) return true;
  if (kx.entries != ky.entries) return false;

  bool some_strict = false;
  for (const Coalition& c : C.coalitions()) {
    SortedKernel cx = coalition_kernel(x, c);
    SortedKernel cy = coalition_kernel(y, c);
    if (lex_less(cx.entries, cy.entries)) {
      some_strict = true;
    } else if (cx.entries != cy.entries) {
      return false;  // x strictly worse for this coalition
    }
  }
  return some_strict;
}

bool welfare_dominates(const Allocation& x, const Allocation& y, const Coalition& c) {
  require_same_game(x, y);
  WelfareKernel wx = welfare_kernel(x, c);
  WelfareKernel wy = welfare_kernel(y, c);
  return lex_less(wx.entries, wy.entries);
}

}  // namespace iscg
