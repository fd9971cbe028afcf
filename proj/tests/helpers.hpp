#pragma once

// Test-only oracles implementing the definitions directly, kept
// independent of the library's search and filtering internals.

#include <optional>
#include <vector>

#include "iscg/enumerate.hpp"
#include "iscg/kernels.hpp"
#include "iscg/solver.hpp"

namespace testing_oracles {

// Every allocation induced when c blocks a, by plain odometer
// enumeration of member reassignments in lexicographic order (members
// ascending, each member's accessible resources ascending).
inline std::vector<iscg::Allocation> brute_force_induced(const iscg::Instance& inst,
                                                         const iscg::Allocation& a,
                                                         const iscg::Coalition& c) {
  std::vector<iscg::Allocation> out;
  std::vector<std::size_t> digits(c.size(), 0);
  while (true) {
    std::vector<iscg::ResourceId> assignment = a.assignment();
    for (std::size_t t = 0; t < c.size(); ++t)
      assignment[static_cast<std::size_t>(c[t] - 1)] =
          inst.accessible(c[t])[digits[t]];
    iscg::Allocation candidate = iscg::validate_allocation(inst, assignment);

    bool weak = true, strict = false;
    for (iscg::AgentId j : c) {
      int before = iscg::cost(a, j);
      int after = iscg::cost(candidate, j);
      weak = weak && after <= before;
      strict = strict || after < before;
    }
    if (weak && strict && candidate.feasible()) out.push_back(std::move(candidate));

    std::size_t t = c.size();
    while (t > 0) {
      --t;
      if (++digits[t] < inst.accessible(c[t]).size()) break;
      digits[t] = 0;
      if (t == 0) return out;
    }
    if (c.empty()) return out;
  }
}

inline std::optional<iscg::Allocation> brute_force_first_induced(
    const iscg::Instance& inst, const iscg::Allocation& a, const iscg::Coalition& c) {
  auto all = brute_force_induced(inst, a, c);
  if (all.empty()) return std::nullopt;
  return all.front();
}

// The maximal set by definition: pairwise dominance over the whole
// feasible space.
inline std::vector<iscg::Allocation> brute_force_maximal(
    const iscg::Instance& inst, const iscg::CoalitionStructure& C,
    long long bound = 1'000'000) {
  std::vector<iscg::Allocation> all = iscg::all_feasible(inst, bound);
  std::vector<iscg::Allocation> out;
  for (const iscg::Allocation& a : all) {
    bool dominated = false;
    for (const iscg::Allocation& b : all)
      if (iscg::balance_dominates(b, a, C)) {
        dominated = true;
        break;
      }
    if (!dominated) out.push_back(a);
  }
  return out;
}

template <typename Fn>
iscg::Errc error_code_of(Fn&& fn) {
  try {
    fn();
  } catch (const iscg::Error& e) {
    return e.code();
  }
  throw std::runtime_error("expected an iscg::Error");
}

}  // namespace testing_oracles
