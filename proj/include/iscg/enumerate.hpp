#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "iscg/allocation.hpp"
#include "iscg/instance.hpp"

namespace iscg {

/// Deterministic stream over the feasible allocation space, in
/// lexicographic order by (agent 1's resource, agent 2's resource, ...)
/// with each agent's accessible resources taken ascending.
///
/// The stream may be split into disjoint index ranges via seek();
/// index k yields the k-th allocation of the sequential order.
class FeasibleEnumeration {
 public:
  /// Throws enumeration_bound_exceeded when |A^f| > bound.
  FeasibleEnumeration(const Instance& inst, long long bound);

  long long count() const { return count_; }

  /// Position the stream so the next() call yields allocation #index.
  void seek(long long index);

  /// Next allocation, or nullopt when exhausted.
  std::optional<Allocation> next();

 private:
  const Instance* inst_;
  long long count_ = 0;
  long long cursor_ = 0;
  std::vector<int> digits_;  // per-agent index into the access list
};

/// Visits every feasible allocation in canonical order; the visitor
/// returns false to stop early. Returns false iff stopped early.
bool for_each_feasible(const Instance& inst, long long bound,
                       const std::function<bool(const Allocation&)>& visit);

/// Materializes the whole feasible space (canonical order).
std::vector<Allocation> all_feasible(const Instance& inst, long long bound);

}  // namespace iscg
