#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "iscg/instance.hpp"

namespace iscg {

/// A total assignment of agents to resources. Stored agent-major;
/// per-resource congestion counts are kept alongside, per-resource
/// member lists are derived on demand.
class Allocation {
 public:
  Allocation() = default;

  /// Trusted constructor: assignment[j-1] in 1..m for every agent j.
  /// Use validate_allocation for unchecked external data.
  Allocation(std::vector<ResourceId> assignment, int resources, bool feasible);

  int agent_count() const { return static_cast<int>(assignment_.size()); }
  int resource_count() const { return m_; }

  ResourceId resource_of(AgentId j) const {
    return assignment_[static_cast<std::size_t>(j - 1)];
  }
  /// |a_i|, the congestion at resource i.
  int count(ResourceId i) const { return counts_[static_cast<std::size_t>(i - 1)]; }
  const std::vector<int>& counts() const { return counts_; }
  const std::vector<ResourceId>& assignment() const { return assignment_; }

  /// Feasibility tag assigned at validation time.
  bool feasible() const { return feasible_; }

  /// Members of resource i, ascending (derived, O(n)).
  std::vector<AgentId> agents_on(ResourceId i) const;
  /// All per-resource member lists (derived, O(n + m)).
  std::vector<std::vector<AgentId>> groups() const;

  bool operator==(const Allocation& other) const {
    return m_ == other.m_ && assignment_ == other.assignment_;
  }

  std::string to_string() const;

 private:
  std::vector<ResourceId> assignment_;
  std::vector<int> counts_;
  int m_ = 0;
  bool feasible_ = false;
};

struct AllocationHash {
  std::size_t operator()(const Allocation& a) const;
};

/// Validates totality and id ranges, tags feasibility against inst.
/// Infeasible allocations are representable; solvers reject them.
Allocation validate_allocation(const Instance& inst,
                               const std::vector<ResourceId>& assignment);

/// Cost of agent j under a: the congestion at j's resource.
int cost(const Allocation& a, AgentId j);

bool is_feasible(const Instance& inst, const Allocation& a);

}  // namespace iscg
