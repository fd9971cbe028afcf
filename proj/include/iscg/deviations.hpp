#pragma once

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "iscg/allocation.hpp"
#include "iscg/coalition.hpp"
#include "iscg/instance.hpp"

namespace iscg {

/// A transformation path between two allocations: movers[t] leaves
/// resources[t] for resources[t+1]. Length (resource count) >= 2,
/// consecutive resources distinct, movers pairwise distinct.
struct Chain {
  std::vector<ResourceId> resources;
  std::vector<AgentId> movers;

  std::size_t length() const { return resources.size(); }
};

/// Checks that ch is a valid source->target chain: each mover sits on
/// its departure resource under source and on its arrival resource
/// under target.
bool is_chain_between(const Allocation& source, const Allocation& target,
                      const Chain& ch);

/// Applies ch to a, moving each mover in sequence; exactly the movers
/// change resources. Throws chain_invalid when some mover is not on its
/// departure resource at its turn.
Allocation apply_chain(const Allocation& a, const Chain& ch);

/// Some a->b chain with length >= min_length (>= 2) if one exists,
/// chosen deterministically: depth-first extension preferring the
/// smallest start resource and smallest mover ids. Movers are not
/// reused within the chain.
std::optional<Chain> find_chain(const Allocation& a, const Allocation& b,
                                std::size_t min_length);

/// Exchanges the resources of two agents on distinct resources.
/// Callers enforce the same-coalition hypothesis where kernel
/// preservation is relied upon.
Allocation swap_agents(const Allocation& a, AgentId j1, AgentId j2);

/// Per-member (agent, old cost, new cost) triples.
using MemberCosts = std::vector<std::tuple<AgentId, int, int>>;

/// Certificate that `coalition` blocks `original`: the induced
/// allocation moves only coalition members, makes every member weakly
/// better off and at least one strictly.
struct BlockingWitness {
  Coalition coalition;
  Allocation original;
  Allocation induced;
  MemberCosts member_costs;
};

/// Builds the witness record for a given coalition and allocation pair,
/// computing the per-member costs. Does not validate.
BlockingWitness assemble_witness(const Coalition& c, const Allocation& original,
                                 const Allocation& induced);

/// Re-checks a witness from its fields alone (non-member fixity, weak
/// improvement, one strict improvement, feasibility). Returns an empty
/// string when valid, otherwise the first violated condition.
std::string witness_violation(const Instance& inst, const BlockingWitness& w);

/// Canonical blocking search: enumerates member reassignments in
/// lexicographic order (members ascending by id, resources ascending)
/// with sound pruning, and returns the first witness, or nullopt when
/// the coalition does not block. `budget` caps placement attempts;
/// exceeding it throws search_bound_exceeded.
std::optional<BlockingWitness> blocks(const Instance& inst, const Allocation& a,
                                      const Coalition& c, long long budget);

/// Visits every allocation induced when c blocks a, in the canonical
/// order. The visitor returns false to stop. Returns false iff stopped.
bool for_each_induced(const Instance& inst, const Allocation& a, const Coalition& c,
                      long long budget,
                      const std::function<bool(const BlockingWitness&)>& visit);

enum class MoveCase { balance, coalition_balance };  // cardinality gap >= 2 / tie-break case

/// A single-agent move that provably improves the balance order.
struct ImprovingMove {
  AgentId agent;
  ResourceId from;
  ResourceId to;
  MoveCase kind;
};

/// Every feasible single-agent move satisfying one of the two
/// dominance-improving conditions, in canonical order (agents
/// ascending, then target resources ascending):
///   balance:            |a_from| >= |a_to| + 2
///   coalition_balance:  |a_from| = |a_to| + 1 and the mover's
///                       coalition has >= 2 more members on `from`.
std::vector<ImprovingMove> improving_single_moves(const Instance& inst,
                                                  const Allocation& a,
                                                  const CoalitionStructure& C);

}  // namespace iscg
