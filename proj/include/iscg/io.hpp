#pragma once

#include <optional>
#include <string>

#include "iscg/solver.hpp"

namespace iscg::io {

inline constexpr const char* kToolVersion = "iscg 0.1.0";

/// Parsed instance file: the game plus an optional coalition structure.
struct InstanceFile {
  Instance inst;
  std::optional<CoalitionStructure> structure;
};

/// Strict parsers: unknown keys, wrong types, and invariant violations
/// all throw Error (parse_error or the specific validation code).
InstanceFile parse_instance_text(const std::string& text);
InstanceFile load_instance(const std::string& path);

Allocation parse_allocation_text(const Instance& inst, const std::string& text);
Allocation load_allocation(const std::string& path, const Instance& inst);

std::string emit_instance(const Instance& inst,
                          const std::optional<CoalitionStructure>& structure);
std::string emit_allocation(const Allocation& a);

/// Report emitted by `check` and `solve`. Witnesses are stored against
/// the report's allocation; kernels cover the coalition structure when
/// one is known. Round-trips losslessly apart from timing.
struct Report {
  std::string command;      // "check" | "solve"
  std::uint64_t seed = 0;
  double timing_ms = 0.0;   // excluded from determinism guarantees
  Allocation allocation;
  bool feasible = false;

  std::optional<CoalitionStructure> structure;

  // requested flags only; absent entries were not evaluated
  std::optional<bool> nash, pareto, partition_stable, super_strong;
  std::optional<BlockingWitness> nash_witness, pareto_witness, super_strong_witness;
  std::optional<BlockingWitness> partition_witness;
  std::optional<std::size_t> partition_witness_coalition;

  // solve only
  std::optional<std::string> solve_mode;
  std::optional<int> chain_limit;
  std::optional<bool> fallback_used;

  /// false when some evaluated flag is false (CLI exit 1).
  bool all_requested_true() const;
};

std::string emit_report(const Instance& inst, const Report& report);
Report parse_report_text(const Instance& inst, const std::string& text);

std::string emit_dynamics(const Instance& inst, const DynamicsTrace& trace,
                          const std::string& policy, int max_steps,
                          std::uint64_t seed, double timing_ms);
DynamicsTrace parse_dynamics_text(const Instance& inst, const std::string& text);

void write_file(const std::string& path, const std::string& text);
std::string read_file(const std::string& path);

/// Enumeration bound from the environment (ISCG_ENUM_BOUND) or the
/// built-in default.
long long enum_bound_from_env();

}  // namespace iscg::io
