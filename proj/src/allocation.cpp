#include "iscg/allocation.hpp"

#include <sstream>

namespace iscg {

Allocation::Allocation(std::vector<ResourceId> assignment, int resources, bool feasible)
    : assignment_(std::move(assignment)),
      counts_(static_cast<std::size_t>(resources), 0),
      m_(resources),
      feasible_(feasible) {
  for (ResourceId i : assignment_) ++counts_[static_cast<std::size_t>(i - 1)];
}

std::vector<AgentId> Allocation::agents_on(ResourceId i) const {
  std::vector<AgentId> members;
  for (AgentId j = 1; j <= agent_count(); ++j)
    if (resource_of(j) == i) members.push_back(j);
  return members;
}

std::vector<std::vector<AgentId>> Allocation::groups() const {
  std::vector<std::vector<AgentId>> gs(static_cast<std::size_t>(m_));
  for (AgentId j = 1; j <= agent_count(); ++j)
    gs[static_cast<std::size_t>(resource_of(j) - 1)].push_back(j);
  return gs;
}

std::string Allocation::to_string() const {
  std::ostringstream os;
  auto gs = groups();
  for (std::size_t i = 0; i < gs.size(); ++i) {
    if (i) os << '|';
    os << '{';
    for (std::size_t t = 0; t < gs[i].size(); ++t) {
      if (t) os << ',';
      os << gs[i][t];
    }
    os << '}';
  }
  return os.str();
}

std::size_t AllocationHash::operator()(const Allocation& a) const {
  std::size_t h = 1469598103934665603ull;  // FNV-1a
  for (ResourceId i : a.assignment()) {
    h ^= static_cast<std::size_t>(i);
    h *= 1099511628211ull;
  }
  return h;
}

Allocation validate_allocation(const Instance& inst,
                               const std::vector<ResourceId>& assignment) {
  if (static_cast<int>(assignment.size()) != inst.agent_count()) {
    std::ostringstream os;
    os << "assignment must cover agents 1.." << inst.agent_count() << " (got "
       << assignment.size() << " entries)";
    throw Error(Errc::not_total, os.str());
  }
  for (AgentId j = 1; j <= inst.agent_count(); ++j) {
    ResourceId i = assignment[static_cast<std::size_t>(j - 1)];
    if (i < 1 || i > inst.resource_count()) {
      std::ostringstream os;
      os << "agent " << j << ": resource id " << i << " out of range 1.."
         << inst.resource_count();
      throw Error(Errc::id_out_of_range, os.str());
    }
  }
  bool feasible = true;
  for (AgentId j = 1; j <= inst.agent_count(); ++j)
    if (!inst.can_use(j, assignment[static_cast<std::size_t>(j - 1)])) {
      feasible = false;
      break;
    }
  return Allocation(assignment, inst.resource_count(), feasible);
}

int cost(const Allocation& a, AgentId j) {
  if (j < 1 || j > a.agent_count()) {
    std::ostringstream os;
    os << "unknown agent " << j;
    throw Error(Errc::unknown_agent, os.str());
  }
  return a.count(a.resource_of(j));
}

bool is_feasible(const Instance& inst, const Allocation& a) {
  if (a.agent_count() != inst.agent_count() || a.resource_count() != inst.resource_count())
    return false;
  for (AgentId j = 1; j <= inst.agent_count(); ++j)
    if (!inst.can_use(j, a.resource_of(j))) return false;
  return true;
}

}  // namespace iscg
