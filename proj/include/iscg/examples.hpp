#pragma once

#include "iscg/coalition.hpp"
#include "iscg/instance.hpp"
#include "iscg/allocation.hpp"

namespace iscg::examples {

/// Example 1 - kernel arithmetic demo: 8 agents, 4 resources, full
/// access; allocation {1,2}|{3,4,5}|{6,7,8}|{} and coalition {1,2,6}.
struct KernelDemo {
  Instance inst;
  Allocation a;
  Coalition c;
};
KernelDemo kernel_demo();

/// Example 2 - stability without maximality: 15 agents on 2 full-access
/// resources, five triples as coalitions; `a` is stable on all three
/// axioms yet balance-dominated by `improved`.
struct StableNotMaximal {
  Instance inst;
  CoalitionStructure C;
  Allocation a;
  Allocation improved;
};
StableNotMaximal stable_not_maximal();

/// Example 3 - blocking without balance dominance: 18 agents on 4
/// full-access resources; coalition {1..13} blocks `a` and the induced
/// `induced` welfare-dominates but does not balance-dominate `a`.
struct NonMonotoneBlocking {
  Instance inst;
  CoalitionStructure C;
  Allocation a;
  Allocation induced;
  Coalition c;
};
NonMonotoneBlocking non_monotone_blocking();

/// Example 4 - overlapping coalitions without stability: 3 agents, 2
/// resources, chained access, family structure {{1,3},{2,3}}; both
/// feasible allocations are blocked.
struct OverlapNoStable {
  Instance inst;
  CoalitionStructure C;
};
OverlapNoStable overlap_no_stable();

}  // namespace iscg::examples
