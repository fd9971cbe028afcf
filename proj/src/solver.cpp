#include "iscg/solver.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "iscg/enumerate.hpp"

namespace iscg {

namespace {

constexpr long long kUnbounded = std::numeric_limits<long long>::max();

void require_feasible(const Instance& inst, const Allocation& a, const char* op) {
  if (!is_feasible(inst, a)) {
    std::ostringstream os;
    os << op << " requires a feasible allocation";
    throw Error(Errc::infeasible_allocation, os.str());
  }
}

}  // namespace

std::pair<bool, std::optional<BlockingWitness>> is_nash(const Instance& inst,
                                                        const Allocation& a) {
  require_feasible(inst, a, "nash check");
  for (AgentId j = 1; j <= inst.agent_count(); ++j) {
    auto w = blocks(inst, a, Coalition{j}, kUnbounded);
    if (w) return {false, std::move(w)};
  }
  return {true, std::nullopt};
}

std::pair<bool, std::optional<BlockingWitness>> is_pareto(const Instance& inst,
                                                          const Allocation& a,
                                                          const Bounds& bounds) {
  require_feasible(inst, a, "pareto check");
  long long space = inst.feasible_count();
  if (space > bounds.enum_bound) {
    std::ostringstream os;
    os << "pareto check must search " << space << " feasible allocations, bound is "
       << bounds.enum_bound;
    throw Error(Errc::enumeration_bound_exceeded, os.str());
  }
  Coalition all(static_cast<std::size_t>(inst.agent_count()));
  for (AgentId j = 1; j <= inst.agent_count(); ++j) all[static_cast<std::size_t>(j - 1)] = j;
  auto w = blocks(inst, a, all, kUnbounded);
  if (w) return {false, std::move(w)};
  return {true, std::nullopt};
}

CStableResult is_c_stable(const Instance& inst, const Allocation& a,
                          const CoalitionStructure& C, const Bounds& bounds) {
  require_feasible(inst, a, "coalition stability check");
  for (std::size_t idx = 0; idx < C.size(); ++idx) {
    auto w = blocks(inst, a, C[idx], bounds.search_bound);
    if (w) return {false, std::move(w), idx};
  }
  return {true, std::nullopt, std::nullopt};
}

std::pair<bool, std::optional<BlockingWitness>> is_super_strong(const Instance& inst,
                                                                const Allocation& a,
                                                                const Bounds& bounds) {
  require_feasible(inst, a, "super-strong check");
  int n = inst.agent_count();
  if (n > bounds.super_strong_max_agents) {
    std::ostringstream os;
    os << "super-strong check over " << n << " agents needs 2^" << n
       << " - 1 coalitions; guard is n <= " << bounds.super_strong_max_agents;
    throw Error(Errc::search_bound_exceeded, os.str());
  }
  // coalitions by size, then lexicographically by member ids
  for (int size = 1; size <= n; ++size) {
    std::vector<AgentId> members(static_cast<std::size_t>(size));
    for (int t = 0; t < size; ++t) members[static_cast<std::size_t>(t)] = t + 1;
    while (true) {
      auto w = blocks(inst, a, members, bounds.search_bound);
      if (w) return {false, std::move(w)};
      int t = size - 1;
      while (t >= 0 && members[static_cast<std::size_t>(t)] == n - (size - 1 - t)) --t;
      if (t < 0) break;
      ++members[static_cast<std::size_t>(t)];
      for (int s = t + 1; s < size; ++s)
        members[static_cast<std::size_t>(s)] = members[static_cast<std::size_t>(s - 1)] + 1;
    }
  }
  return {true, std::nullopt};
}

StabilityReport stability_report(const Instance& inst, const Allocation& a,
                                 const CoalitionStructure& C, bool with_super_strong,
                                 const Bounds& bounds) {
  StabilityReport report;
  auto [nash, nash_w] = is_nash(inst, a);
  report.nash = nash;
  report.nash_witness = std::move(nash_w);
  auto [pareto, pareto_w] = is_pareto(inst, a, bounds);
  report.pareto = pareto;
  report.pareto_witness = std::move(pareto_w);
  auto cres = is_c_stable(inst, a, C, bounds);
  report.partition_stable = cres.stable;
  report.partition_witness = std::move(cres.witness);
  report.partition_witness_coalition = cres.coalition_index;
  if (with_super_strong) {
    auto [ss, ss_w] = is_super_strong(inst, a, bounds);
    report.super_strong = ss;
    report.super_strong_witness = std::move(ss_w);
  }
  return report;
}

namespace {

// Coalition kernels flattened into one key of |C| blocks of length m.
std::vector<int> coalition_key(const Allocation& a, const CoalitionStructure& C) {
  std::vector<int> key;
  key.reserve(C.size() * static_cast<std::size_t>(a.resource_count()));
  for (const Coalition& c : C.coalitions()) {
    SortedKernel k = coalition_kernel(a, c);
    key.insert(key.end(), k.entries.begin(), k.entries.end());
  }
  return key;
}

// True when x is blockwise lex-<= y with at least one block strictly
// smaller; blocks of width m correspond to coalition kernels.
bool key_dominates(const std::vector<int>& x, const std::vector<int>& y, int m) {
  bool strict = false;
  for (std::size_t at = 0; at < x.size(); at += static_cast<std::size_t>(m)) {
    std::span<const int> bx(x.data() + at, static_cast<std::size_t>(m));
    std::span<const int> by(y.data() + at, static_cast<std::size_t>(m));
    if (lex_less(bx, by)) {
      strict = true;
    } else if (!std::equal(bx.begin(), bx.end(), by.begin())) {
      return false;
    }
  }
  return strict;
}

}  // namespace

std::vector<Allocation> maximal_allocations(const Instance& inst,
                                            const CoalitionStructure& C,
                                            const Bounds& bounds) {
  if (!C.is_partition())
    throw Error(Errc::not_a_partition, "the maximal set is defined for partition structures");

  // Pass 1: the lex-least kernel. Any allocation with a larger kernel is
  // dominated outright, so only the least-kernel slice can be maximal.
  std::optional<SortedKernel> least;
  for_each_feasible(inst, bounds.enum_bound, [&](const Allocation& a) {
    SortedKernel k = kernel(a);
    if (!least || lex_less(k.entries, least->entries)) least = std::move(k);
    return true;
  });

  // Pass 2: within the slice, dominance is decided entirely by the
  // tuple of coalition kernels, so filter the distinct tuples.
  std::vector<Allocation> slice;
  std::vector<std::vector<int>> keys;
  std::map<std::vector<int>, std::size_t> distinct;  // key -> index into order
  std::vector<std::vector<int>> order;
  for_each_feasible(inst, bounds.enum_bound, [&](const Allocation& a) {
    if (kernel(a).entries != least->entries) return true;
    std::vector<int> key = coalition_key(a, C);
    if (distinct.emplace(key, order.size()).second) order.push_back(key);
    slice.push_back(a);
    keys.push_back(std::move(key));
    return true;
  });

  std::vector<char> dominated(order.size(), 0);
  for (std::size_t x = 0; x < order.size(); ++x)
    for (std::size_t y = 0; y < order.size(); ++y)
      if (x != y && key_dominates(order[x], order[y], inst.resource_count()))
        dominated[y] = 1;

  std::vector<Allocation> result;
  for (std::size_t t = 0; t < slice.size(); ++t)
    if (!dominated[distinct.at(keys[t])]) result.push_back(std::move(slice[t]));
  return result;
}

namespace {

// Deterministic greedy start: agents in id order pick their least
// crowded accessible resource.
Allocation greedy_start(const Instance& inst) {
  std::vector<int> counts(static_cast<std::size_t>(inst.resource_count()), 0);
  std::vector<ResourceId> assignment(static_cast<std::size_t>(inst.agent_count()));
  for (AgentId j = 1; j <= inst.agent_count(); ++j) {
    ResourceId best = 0;
    for (ResourceId r : inst.accessible(j))
      if (best == 0 || counts[static_cast<std::size_t>(r - 1)] <
                           counts[static_cast<std::size_t>(best - 1)])
        best = r;
    assignment[static_cast<std::size_t>(j - 1)] = best;
    ++counts[static_cast<std::size_t>(best - 1)];
  }
  return Allocation(std::move(assignment), inst.resource_count(), true);
}

// One kernel-reducing chain of at most max_len resources, or nullopt.
// Moving an agent along a path from an overloaded resource to one at
// least two units lighter strictly reduces the kernel; BFS by source in
// (count desc, id asc) order keeps the choice canonical.
std::optional<Chain> improving_chain(const Instance& inst, const Allocation& a,
                                     int max_len) {
  int m = inst.resource_count();
  std::vector<ResourceId> sources(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) sources[static_cast<std::size_t>(i)] = i + 1;
  std::stable_sort(sources.begin(), sources.end(), [&](ResourceId p, ResourceId q) {
    return a.count(p) > a.count(q);
  });

  // edge i -> i' with the smallest mover able to make the hop
  std::vector<std::vector<AgentId>> mover(
      static_cast<std::size_t>(m), std::vector<AgentId>(static_cast<std::size_t>(m), 0));
  for (AgentId j = 1; j <= a.agent_count(); ++j) {
    std::size_t from = static_cast<std::size_t>(a.resource_of(j) - 1);
    for (ResourceId to : inst.accessible(j)) {
      AgentId& slot = mover[from][static_cast<std::size_t>(to - 1)];
      if (to != a.resource_of(j) && (slot == 0 || j < slot)) slot = j;
    }
  }

  for (ResourceId s : sources) {
    if (a.count(s) < 2) break;  // sorted by count; nothing lighter by 2 remains
    std::vector<int> parent(static_cast<std::size_t>(m) + 1, -1);
    std::deque<ResourceId> queue{s};
    std::vector<int> depth(static_cast<std::size_t>(m) + 1, 0);
    parent[static_cast<std::size_t>(s)] = 0;
    while (!queue.empty()) {
      ResourceId here = queue.front();
      queue.pop_front();
      if (a.count(here) <= a.count(s) - 2) {
        Chain ch;
        for (ResourceId at = here; at != 0; at = static_cast<ResourceId>(
                                                parent[static_cast<std::size_t>(at)]))
          ch.resources.push_back(at);
        std::reverse(ch.resources.begin(), ch.resources.end());
        for (std::size_t t = 0; t + 1 < ch.resources.size(); ++t)
          ch.movers.push_back(mover[static_cast<std::size_t>(ch.resources[t] - 1)]
                                   [static_cast<std::size_t>(ch.resources[t + 1] - 1)]);
        return ch;
      }
      if (depth[static_cast<std::size_t>(here)] >= max_len - 1) continue;
      for (ResourceId to = 1; to <= m; ++to)
        if (mover[static_cast<std::size_t>(here - 1)][static_cast<std::size_t>(to - 1)] != 0 &&
            parent[static_cast<std::size_t>(to)] == -1) {
          parent[static_cast<std::size_t>(to)] = here;
          depth[static_cast<std::size_t>(to)] = depth[static_cast<std::size_t>(here)] + 1;
          queue.push_back(to);
        }
    }
  }
  return std::nullopt;
}

// Kernel-preserving coalition rebalancing: the first canonical
// improving single move, else the first canonical same-game swap that
// strictly improves the balance order.
std::optional<Allocation> rebalance_step(const Instance& inst, const Allocation& a,
                                         const CoalitionStructure& C) {
  auto moves = improving_single_moves(inst, a, C);
  if (!moves.empty()) {
    const ImprovingMove& mv = moves.front();
    Chain step{{mv.from, mv.to}, {mv.agent}};
    return apply_chain(a, step);
  }
  for (AgentId j1 = 1; j1 <= a.agent_count(); ++j1)
    for (AgentId j2 = j1 + 1; j2 <= a.agent_count(); ++j2) {
      ResourceId r1 = a.resource_of(j1);
      ResourceId r2 = a.resource_of(j2);
      if (r1 == r2 || !inst.can_use(j1, r2) || !inst.can_use(j2, r1)) continue;
      Allocation swapped = swap_agents(a, j1, j2);
      if (balance_dominates(swapped, a, C)) return swapped;
    }
  return std::nullopt;
}

}  // namespace

SolveResult find_stable(const Instance& inst, const CoalitionStructure& C,
                        const SolveOptions& options) {
  if (!C.is_partition())
    throw Error(Errc::not_a_partition, "solving requires a partition structure");

  auto exact = [&]() -> SolveResult {
    std::vector<Allocation> maximal = maximal_allocations(inst, C, options.bounds);
    Allocation best = maximal.front();  // nonempty for every valid instance
    StabilityReport report = stability_report(inst, best, C, false, options.bounds);
    if (!report.all_axioms())
      throw std::logic_error("maximal allocation failed certification");
    return SolveResult{std::move(best), std::move(report), false};
  };

  if (options.mode == SolveMode::exact) return exact();

  int chain_limit = options.chain_limit > 0 ? options.chain_limit : inst.resource_count();
  if (chain_limit < 2) chain_limit = 2;
  Allocation current = greedy_start(inst);

  while (auto ch = improving_chain(inst, current, chain_limit))
    current = apply_chain(current, *ch);

  constexpr int kRebalanceBudget = 10'000;
  for (int step = 0; step < kRebalanceBudget; ++step) {
    auto next = rebalance_step(inst, current, C);
    if (!next) break;
    current = std::move(*next);
  }

  StabilityReport report = stability_report(inst, current, C, false, options.bounds);
  if (report.all_axioms()) return SolveResult{std::move(current), std::move(report), false};

  SolveResult fallback = exact();
  fallback.fallback_used = true;
  return fallback;
}

DynamicsTrace run_dynamics(const Instance& inst, const CoalitionStructure& C,
                           const Allocation& start, DynamicsPolicy policy,
                           int max_steps, const Bounds& bounds) {
  (void)policy;  // single canonical policy
  require_feasible(inst, start, "dynamics");

  DynamicsTrace trace;
  trace.start = start;
  std::unordered_map<Allocation, std::size_t, AllocationHash> seen;
  seen.emplace(start, 0);

  Allocation current = start;
  for (int step = 0; step < max_steps; ++step) {
    std::optional<BlockingWitness> witness;
    std::size_t idx = 0;
    for (; idx < C.size(); ++idx) {
      witness = blocks(inst, current, C[idx], bounds.search_bound);
      if (witness) break;
    }
    if (!witness) {
      trace.terminal = DynamicsTerminal::stable;
      return trace;
    }
    trace.steps.push_back({current, idx, C[idx], witness->induced});
    current = witness->induced;
    auto [it, fresh] = seen.emplace(current, trace.steps.size());
    if (!fresh) {
      trace.terminal = DynamicsTerminal::cycle;
      trace.cycle_start = it->second;
      return trace;
    }
  }
  // one more stability probe so a trace that lands on a stable state at
  // the limit is reported as stable
  bool blocked = false;
  for (std::size_t idx = 0; idx < C.size() && !blocked; ++idx)
    blocked = blocks(inst, current, C[idx], bounds.search_bound).has_value();
  trace.terminal = blocked ? DynamicsTerminal::step_limit : DynamicsTerminal::stable;
  return trace;
}

}  // namespace iscg
