#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iscg/solver.hpp"

namespace iscg::verify {

enum class CoalitionShape { singletons, random_partition, grand };

/// Seeded instance generator configuration. Identical configs produce
/// identical streams; every generated instance satisfies coverage via a
/// repair step that grants uncovered agents one uniformly drawn resource.
struct GeneratorConfig {
  std::uint64_t seed = 0;
  int n_min = 1, n_max = 5;
  int m_min = 1, m_max = 3;
  double access_density = 0.5;
  CoalitionShape coalition_shape = CoalitionShape::random_partition;
  int max_coalition_size = 3;  // random_partition only

  void validate() const;  // throws invalid_config
};

/// Case #index of the stream for cfg; pure function of (cfg, index).
std::pair<Instance, CoalitionStructure> gen_case(const GeneratorConfig& cfg,
                                                 std::uint64_t index);

/// The stability-suite stream (n <= 5, m <= 3, per-case access density,
/// random partitions); shared by the maximal-stability and
/// solver-certification suites.
std::pair<Instance, CoalitionStructure> stability_suite_case(std::uint64_t seed,
                                                             std::uint64_t index);

/// Deterministic per-case RNG stream (also used for in-case sampling).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();                 // splitmix64
  int uniform(int lo, int hi);          // inclusive
  double uniform01();
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

 private:
  std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform random feasible allocation (each agent picks uniformly from
/// its access set).
Allocation random_feasible(const Instance& inst, Rng& rng);

/// Grid-world instance builder: resources are the free cells of a
/// rows x cols grid, and each robot may use its own cell plus the
/// orthogonally adjacent free cells. Robots must stand on free cells.
RawInstance grid_instance(int rows, int cols,
                          const std::vector<std::pair<int, int>>& obstacles,
                          const std::vector<std::pair<int, int>>& robots);

// ---------------------------------------------------------------------------
// Single-case checks. Each validates its hypothesis (throwing
// hypothesis_violated on violation) and returns whether the asserted
// conclusion holds; the suites below quantify them over seeded cases.
// ---------------------------------------------------------------------------

/// Swapping two same-coalition agents preserves k, every coalition
/// kernel, and every welfare kernel.
bool check_swap_invariance(const Allocation& a, const CoalitionStructure& C,
                           AgentId j1, AgentId j2);

/// A move satisfying one of the improving-move conditions yields an
/// allocation that balance-dominates the input.
bool check_single_move_dominance(const Instance& inst, const Allocation& a,
                                 const CoalitionStructure& C, const ImprovingMove& move);

/// Every allocation induced when c blocks a welfare-dominates a.
bool check_blocking_welfare_dominance(const Instance& inst, const Allocation& a,
                                      const Coalition& c, long long budget);

/// Welfare dominance restricted by an agreeing resource set Mtilde:
/// given b welfare-dominating a and per-congestion member counts over
/// Mtilde equal between a and b (with M \ Mtilde nonempty), the maximal
/// congestion outside Mtilde cannot grow, and at that congestion level a
/// holds at least as many members as b.
bool check_stratum_bounds(const Instance& inst, const Allocation& a,
                          const Allocation& b, const Coalition& c,
                          const std::vector<ResourceId>& m_tilde);

/// The maximal set is nonempty and every member is Nash, Pareto
/// efficient, and C-stable.
bool check_maximal_stability(const Instance& inst, const CoalitionStructure& C,
                             const Bounds& bounds = {});

/// Record of the two-step reduction applied to a blocking pair (a, b):
/// restrict access to the union of the two allocations, then swap out
/// long chains until only length-2 chains remain, and stratify the
/// resources by how they differ.
struct ProofTrace {
  std::vector<std::vector<AgentId>> restricted_access;  // per resource, after step 1

  struct SwapStep {
    AgentId stays;    // j1: ends on the chain's third resource
    AgentId returns;  // j2: ends on the chain's second resource
    ResourceId via;   // i2
    ResourceId target;  // i3
  };
  std::vector<SwapStep> swaps;

  std::vector<int> final_chain_lengths;  // one per residual mover; all 2

  std::vector<ResourceId> unchanged;  // a_i == b_i
  std::vector<ResourceId> shrunk;     // b_i strictly inside a_i
  std::vector<ResourceId> grown;      // b_i strictly contains a_i
  std::map<int, std::vector<ResourceId>> shrunk_by_count;  // keyed by |a_i|
  std::map<int, std::vector<ResourceId>> grown_by_count;

  int k_max = 0;      // max |a_i| over changed resources
  int kbar_max = 0;   // max |b_i| over changed resources
  std::vector<std::pair<ResourceId, ResourceId>> matched;  // top-stratum matching

  bool maximality_checked = false;
  bool a_was_maximal = false;
  Allocation reduced;  // b after all swaps
};

/// Executes the reduction on a blocking pair and asserts its structural
/// invariants along the way (termination, preserved kernels and welfare
/// dominance, residual chains of length 2, well-formed stratification,
/// injective top-stratum matching). When the feasible space fits the
/// bounds it also confirms that a is not maximal - a maximal a admits
/// no blocking pair in the first place.
ProofTrace check_reduction(const Instance& inst, const CoalitionStructure& C,
                           const Allocation& a, const Allocation& b,
                           const Coalition& c, const Bounds& bounds = {});

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

struct SuiteReport {
  std::string name;
  long long cases = 0;      // accepted cases actually checked
  long long rejected = 0;   // sampled cases whose hypotheses failed
  long long failures = 0;
  std::vector<std::string> failure_messages;  // include replayable seeds

  bool ok() const { return failures == 0; }
};

struct SuiteOptions {
  std::uint64_t seed = 1;
  long long cases = 0;  // 0: per-suite default
  int threads = 1;
};

SuiteReport run_swap_invariance_suite(const SuiteOptions& opts);       // default 10^4 cases
SuiteReport run_single_move_suite(const SuiteOptions& opts);           // default 200 seeds, exhaustive
SuiteReport run_blocking_welfare_suite(const SuiteOptions& opts);      // default 10^3 blocking cases
SuiteReport run_stratum_bounds_suite(const SuiteOptions& opts);        // default >= 200 accepted
SuiteReport run_maximal_stability_suite(const SuiteOptions& opts);     // default 1000 instances
SuiteReport run_solver_certification_suite(const SuiteOptions& opts);  // default 1000 instances
SuiteReport run_reduction_suite(const SuiteOptions& opts);             // default 200 blocking pairs

/// The bundled regression examples (fixed fixtures): per-example pass
/// flag and failure details.
struct ExampleResult {
  std::string name;
  bool passed = true;
  std::vector<std::string> failures;
};

std::vector<ExampleResult> reproduce_examples();

}  // namespace iscg::verify
