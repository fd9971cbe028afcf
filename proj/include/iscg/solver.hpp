#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "iscg/deviations.hpp"
#include "iscg/kernels.hpp"

namespace iscg {

/// Stability flags with certifying witnesses for every false flag.
/// super_strong is only populated when requested.
struct StabilityReport {
  bool nash = false;
  bool pareto = false;
  bool partition_stable = false;
  std::optional<bool> super_strong;

  std::optional<BlockingWitness> nash_witness;
  std::optional<BlockingWitness> pareto_witness;
  std::optional<BlockingWitness> partition_witness;
  std::optional<std::size_t> partition_witness_coalition;  // index into C
  std::optional<BlockingWitness> super_strong_witness;

  bool all_axioms() const { return nash && pareto && partition_stable; }
};

/// No singleton blocks a. Witness: the canonical singleton deviation of
/// the smallest deviating agent.
std::pair<bool, std::optional<BlockingWitness>> is_nash(const Instance& inst,
                                                        const Allocation& a);

/// The grand coalition does not block a, decided by canonical search
/// over the feasible space. Requires |A^f| within bounds.enum_bound.
std::pair<bool, std::optional<BlockingWitness>> is_pareto(const Instance& inst,
                                                          const Allocation& a,
                                                          const Bounds& bounds = {});

struct CStableResult {
  bool stable = true;
  std::optional<BlockingWitness> witness;
  std::optional<std::size_t> coalition_index;
};

/// No coalition of C blocks a. Accepts partition and family structures.
CStableResult is_c_stable(const Instance& inst, const Allocation& a,
                          const CoalitionStructure& C, const Bounds& bounds = {});

/// No nonempty coalition blocks a. Guarded by
/// bounds.super_strong_max_agents; coalitions are scanned by size, then
/// lexicographically.
std::pair<bool, std::optional<BlockingWitness>> is_super_strong(const Instance& inst,
                                                                const Allocation& a,
                                                                const Bounds& bounds = {});

/// Assembles a full report; computes super_strong only when asked.
StabilityReport stability_report(const Instance& inst, const Allocation& a,
                                 const CoalitionStructure& C,
                                 bool with_super_strong = false,
                                 const Bounds& bounds = {});

/// The allocations maximal under balance dominance: feasible a such
/// that no feasible allocation balance-dominates a. Returned in
/// canonical enumeration order; nonempty for every valid instance.
std::vector<Allocation> maximal_allocations(const Instance& inst,
                                            const CoalitionStructure& C,
                                            const Bounds& bounds = {});

enum class SolveMode { exact, heuristic };

struct SolveOptions {
  SolveMode mode = SolveMode::exact;
  int chain_limit = 0;  // 0: default to the resource count
  Bounds bounds;
};

struct SolveResult {
  Allocation allocation;
  StabilityReport report;    // always fully true on return
  bool fallback_used = false;  // heuristic mode had to fall back to exact
};

/// Finds an allocation certified Nash + Pareto + C-stable. Exact mode
/// returns the first maximal allocation. Heuristic mode runs a two-tier
/// ascent (kernel-reducing chains, then kernel-preserving coalition
/// rebalancing), certifies the result, and falls back to exact mode if
/// certification fails. The output is always certified.
SolveResult find_stable(const Instance& inst, const CoalitionStructure& C,
                        const SolveOptions& options = {});

enum class DynamicsPolicy { canonical };

enum class DynamicsTerminal { stable, cycle, step_limit };

struct DynamicsStep {
  Allocation from;
  std::size_t coalition_index;
  Coalition coalition;
  Allocation induced;
};

struct DynamicsTrace {
  Allocation start;
  std::vector<DynamicsStep> steps;
  DynamicsTerminal terminal = DynamicsTerminal::stable;
  std::optional<std::size_t> cycle_start;  // index of the repeated state
};

/// Repeatedly applies blocking deviations: the canonical policy picks
/// the smallest coalition index that blocks and its canonical induced
/// allocation. Stops on stability, on an exact allocation repeat, or at
/// max_steps.
DynamicsTrace run_dynamics(const Instance& inst, const CoalitionStructure& C,
                           const Allocation& start, DynamicsPolicy policy,
                           int max_steps, const Bounds& bounds = {});

}  // namespace iscg
