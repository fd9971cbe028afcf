#include "iscg/coalition.hpp"

#include <algorithm>
#include <sstream>

namespace iscg {

Coalition make_coalition(int agents, std::vector<AgentId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) throw Error(Errc::empty_coalition, "coalition is empty");
  for (AgentId j : members) {
    if (j < 1 || j > agents) {
      std::ostringstream os;
      os << "coalition member " << j << " out of range 1.." << agents;
      throw Error(Errc::id_out_of_range, os.str());
    }
  }
  return members;
}

bool coalition_contains(const Coalition& c, AgentId j) {
  return std::binary_search(c.begin(), c.end(), j);
}

CoalitionStructure::CoalitionStructure(StructureMode mode, int agents,
                                       std::vector<Coalition> coalitions)
    : mode_(mode), coalitions_(std::move(coalitions)) {
  for (auto& c : coalitions_) c = make_coalition(agents, std::move(c));
  if (mode_ == StructureMode::partition) {
    owner_.assign(static_cast<std::size_t>(agents), -1);
    for (std::size_t idx = 0; idx < coalitions_.size(); ++idx) {
      for (AgentId j : coalitions_[idx]) {
        int& slot = owner_[static_cast<std::size_t>(j - 1)];
        if (slot != -1) {
          std::ostringstream os;
          os << "agent " << j << " appears in coalitions " << slot << " and " << idx;
          throw Error(Errc::not_a_partition, os.str());
        }
        slot = static_cast<int>(idx);
      }
    }
    for (AgentId j = 1; j <= agents; ++j)
      if (owner_[static_cast<std::size_t>(j - 1)] == -1) {
        std::ostringstream os;
        os << "agent " << j << " is covered by no coalition";
        throw Error(Errc::not_a_partition, os.str());
      }
  }
}

CoalitionStructure CoalitionStructure::partition(int agents,
                                                 std::vector<Coalition> coalitions) {
  return CoalitionStructure(StructureMode::partition, agents, std::move(coalitions));
}

CoalitionStructure CoalitionStructure::family(int agents,
                                              std::vector<Coalition> coalitions) {
  return CoalitionStructure(StructureMode::family, agents, std::move(coalitions));
}

CoalitionStructure CoalitionStructure::singletons(int agents) {
  std::vector<Coalition> cs;
  cs.reserve(static_cast<std::size_t>(agents));
  for (AgentId j = 1; j <= agents; ++j) cs.push_back({j});
  return partition(agents, std::move(cs));
}

CoalitionStructure CoalitionStructure::grand(int agents) {
  Coalition all(static_cast<std::size_t>(agents));
  for (AgentId j = 1; j <= agents; ++j) all[static_cast<std::size_t>(j - 1)] = j;
  return partition(agents, {all});
}

std::size_t CoalitionStructure::coalition_of(AgentId j) const {
  if (!is_partition())
    throw Error(Errc::not_a_partition, "coalition_of requires a partition structure");
  return static_cast<std::size_t>(owner_[static_cast<std::size_t>(j - 1)]);
}

}  // namespace iscg
