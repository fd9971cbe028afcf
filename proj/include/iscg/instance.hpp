#pragma once

#include <cstdint>
#include <vector>

#include "iscg/errors.hpp"

namespace iscg {

using AgentId = int;     // 1-based
using ResourceId = int;  // 1-based

/// Work budgets for the enumeration- and search-based operations.
struct Bounds {
  long long enum_bound = 10'000'000;    // max size of the feasible allocation space
  long long search_bound = 1'000'000;   // max placement attempts in a blocking search
  int super_strong_max_agents = 12;     // 2^n - 1 coalitions must stay searchable
};

/// Unvalidated instance data as it arrives from files or generators.
/// access[j-1] lists the resources agent j may use (1-based ids).
struct RawInstance {
  int agents = 0;
  int resources = 0;
  std::vector<std::vector<ResourceId>> access;
};

/// A validated game: n agents, m resources, and the accessibility
/// constraint, queryable both per agent and per resource.
class Instance {
 public:
  int agent_count() const { return n_; }
  int resource_count() const { return m_; }

  const std::vector<ResourceId>& accessible(AgentId j) const {
    return by_agent_[static_cast<std::size_t>(j - 1)];
  }
  const std::vector<AgentId>& permitted(ResourceId i) const {
    return by_resource_[static_cast<std::size_t>(i - 1)];
  }
  bool can_use(AgentId j, ResourceId i) const {
    return mask_[static_cast<std::size_t>(j - 1) * m_ + (i - 1)] != 0;
  }

  bool agent_in_range(AgentId j) const { return j >= 1 && j <= n_; }
  bool resource_in_range(ResourceId i) const { return i >= 1 && i <= m_; }

  /// Size of the feasible allocation space, saturated at 2^63-1.
  long long feasible_count() const;

  friend Instance validate_instance(const RawInstance& raw);

 private:
  int n_ = 0;
  int m_ = 0;
  std::vector<std::vector<ResourceId>> by_agent_;
  std::vector<std::vector<AgentId>> by_resource_;
  std::vector<std::uint8_t> mask_;  // n*m membership matrix
};

/// Checks every instance invariant and returns the validated game, or
/// throws a single Error listing all violations.
Instance validate_instance(const RawInstance& raw);

/// Convenience for building instances from per-resource permitted sets.
Instance instance_from_resource_sets(int agents, int resources,
                                     const std::vector<std::vector<AgentId>>& permitted);

/// Full-access instance: every agent may use every resource.
Instance full_access_instance(int agents, int resources);

}  // namespace iscg
