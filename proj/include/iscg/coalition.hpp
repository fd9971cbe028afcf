#pragma once

#include <vector>

#include "iscg/instance.hpp"

namespace iscg {

/// Nonempty agent set, sorted ascending.
using Coalition = std::vector<AgentId>;

enum class StructureMode { partition, family };

/// A set of viable coalitions. Partition mode: pairwise disjoint and
/// covering all agents. Family mode: arbitrary nonempty subsets,
/// used by stability checks over overlapping structures.
class CoalitionStructure {
 public:
  static CoalitionStructure partition(int agents, std::vector<Coalition> coalitions);
  static CoalitionStructure family(int agents, std::vector<Coalition> coalitions);
  static CoalitionStructure singletons(int agents);
  static CoalitionStructure grand(int agents);

  StructureMode mode() const { return mode_; }
  bool is_partition() const { return mode_ == StructureMode::partition; }
  const std::vector<Coalition>& coalitions() const { return coalitions_; }
  std::size_t size() const { return coalitions_.size(); }
  const Coalition& operator[](std::size_t idx) const { return coalitions_[idx]; }

  /// Partition mode only: index of the coalition containing agent j.
  std::size_t coalition_of(AgentId j) const;

 private:
  CoalitionStructure(StructureMode mode, int agents, std::vector<Coalition> coalitions);

  StructureMode mode_;
  std::vector<Coalition> coalitions_;
  std::vector<int> owner_;  // agent -> coalition index, partition mode
};

/// Sorted, deduplicated, validated against the given agent count.
Coalition make_coalition(int agents, std::vector<AgentId> members);

bool coalition_contains(const Coalition& c, AgentId j);

}  // namespace iscg
