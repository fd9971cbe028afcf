#include "iscg/verify.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

#include "iscg/enumerate.hpp"
#include "iscg/examples.hpp"
#include "iscg/parallel.hpp"

namespace iscg::verify {

// ---------------------------------------------------------------------------
// Seeded generation
// ---------------------------------------------------------------------------

std::uint64_t Rng::next() {
  // splitmix64; stable across platforms, unlike the standard distributions
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

int Rng::uniform(int lo, int hi) {
  return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
}

double Rng::uniform01() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  Rng r(seed + (index + 1) * 0x9E3779B97F4A7C15ull);
  return r.next();
}

void GeneratorConfig::validate() const {
  std::ostringstream os;
  if (n_min < 1 || n_min > n_max) {
    os << "agent range [" << n_min << "," << n_max << "] is empty or invalid";
    throw Error(Errc::invalid_config, os.str());
  }
  if (m_min < 1 || m_min > m_max) {
    os << "resource range [" << m_min << "," << m_max << "] is empty or invalid";
    throw Error(Errc::invalid_config, os.str());
  }
  if (access_density < 0.0 || access_density > 1.0) {
    os << "access density " << access_density << " outside [0,1]";
    throw Error(Errc::invalid_config, os.str());
  }
  if (coalition_shape == CoalitionShape::random_partition && max_coalition_size < 1)
    throw Error(Errc::invalid_config, "max coalition size must be >= 1");
}

std::pair<Instance, CoalitionStructure> gen_case(const GeneratorConfig& cfg,
                                                 std::uint64_t index) {
  cfg.validate();
  Rng rng(mix_seed(cfg.seed, index));
  int n = rng.uniform(cfg.n_min, cfg.n_max);
  int m = rng.uniform(cfg.m_min, cfg.m_max);

  RawInstance raw;
  raw.agents = n;
  raw.resources = m;
  raw.access.assign(static_cast<std::size_t>(n), {});
  for (AgentId j = 1; j <= n; ++j)
    for (ResourceId i = 1; i <= m; ++i)
      if (rng.uniform01() < cfg.access_density)
        raw.access[static_cast<std::size_t>(j - 1)].push_back(i);
  // coverage repair: every agent gets at least one resource
  for (AgentId j = 1; j <= n; ++j)
    if (raw.access[static_cast<std::size_t>(j - 1)].empty())
      raw.access[static_cast<std::size_t>(j - 1)].push_back(rng.uniform(1, m));
  Instance inst = validate_instance(raw);

  switch (cfg.coalition_shape) {
    case CoalitionShape::singletons:
      return {std::move(inst), CoalitionStructure::singletons(n)};
    case CoalitionShape::grand:
      return {std::move(inst), CoalitionStructure::grand(n)};
    case CoalitionShape::random_partition:
      break;
  }
  std::vector<AgentId> ids(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) ids[static_cast<std::size_t>(t)] = t + 1;
  for (int t = n - 1; t > 0; --t)
    std::swap(ids[static_cast<std::size_t>(t)],
              ids[static_cast<std::size_t>(rng.uniform(0, t))]);
  std::vector<Coalition> groups;
  std::size_t at = 0;
  while (at < ids.size()) {
    int remaining = static_cast<int>(ids.size() - at);
    int size = rng.uniform(1, std::min(cfg.max_coalition_size, remaining));
    groups.emplace_back(ids.begin() + static_cast<long>(at),
                        ids.begin() + static_cast<long>(at) + size);
    at += static_cast<std::size_t>(size);
  }
  return {std::move(inst), CoalitionStructure::partition(n, std::move(groups))};
}

Allocation random_feasible(const Instance& inst, Rng& rng) {
  std::vector<ResourceId> assignment(static_cast<std::size_t>(inst.agent_count()));
  for (AgentId j = 1; j <= inst.agent_count(); ++j)
    assignment[static_cast<std::size_t>(j - 1)] = rng.pick(inst.accessible(j));
  return Allocation(std::move(assignment), inst.resource_count(), true);
}

RawInstance grid_instance(int rows, int cols,
                          const std::vector<std::pair<int, int>>& obstacles,
                          const std::vector<std::pair<int, int>>& robots) {
  if (rows < 1 || cols < 1)
    throw Error(Errc::invalid_config, "grid must have positive dimensions");
  std::set<std::pair<int, int>> blocked(obstacles.begin(), obstacles.end());
  std::map<std::pair<int, int>, ResourceId> cell_id;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (!blocked.count({r, c}))
        cell_id.emplace(std::make_pair(r, c), static_cast<ResourceId>(cell_id.size() + 1));

  RawInstance raw;
  raw.agents = static_cast<int>(robots.size());
  raw.resources = static_cast<int>(cell_id.size());
  raw.access.assign(robots.size(), {});
  for (std::size_t t = 0; t < robots.size(); ++t) {
    auto [r, c] = robots[t];
    auto own = cell_id.find({r, c});
    if (own == cell_id.end()) {
      std::ostringstream os;
      os << "robot " << t + 1 << " stands on a blocked or out-of-grid cell (" << r
         << "," << c << ")";
      throw Error(Errc::invalid_config, os.str());
    }
    auto& access = raw.access[t];
    access.push_back(own->second);
    const std::pair<int, int> steps[4] = {{r - 1, c}, {r + 1, c}, {r, c - 1}, {r, c + 1}};
    for (auto [nr, nc] : steps) {
      if (nr < 0 || nr >= rows || nc < 0 || nc >= cols) continue;
      auto it = cell_id.find({nr, nc});
      if (it != cell_id.end()) access.push_back(it->second);
    }
    std::sort(access.begin(), access.end());
  }
  return raw;
}

// ---------------------------------------------------------------------------
// Single-case checks
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void hypothesis(const std::string& what) {
  throw Error(Errc::hypothesis_violated, what);
}

void claim(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("claim failed: " + what);
}

int coalition_members_on(const Allocation& a, const Coalition& c, ResourceId i) {
  int tally = 0;
  for (AgentId j : c)
    if (a.resource_of(j) == i) ++tally;
  return tally;
}

}  // namespace

bool check_swap_invariance(const Allocation& a, const CoalitionStructure& C,
                           AgentId j1, AgentId j2) {
  if (!C.is_partition()) hypothesis("swap invariance is stated for partition structures");
  if (j1 < 1 || j1 > a.agent_count() || j2 < 1 || j2 > a.agent_count() || j1 == j2)
    hypothesis("swap needs two distinct agents of the game");
  if (C.coalition_of(j1) != C.coalition_of(j2))
    hypothesis("agents belong to different coalitions");
  if (a.resource_of(j1) == a.resource_of(j2))
    hypothesis("agents share a resource");

  Allocation swapped = swap_agents(a, j1, j2);
  if (kernel(swapped) != kernel(a)) return false;
  for (const Coalition& c : C.coalitions()) {
    if (coalition_kernel(swapped, c) != coalition_kernel(a, c)) return false;
    if (welfare_kernel(swapped, c) != welfare_kernel(a, c)) return false;
  }
  return true;
}

bool check_single_move_dominance(const Instance& inst, const Allocation& a,
                                 const CoalitionStructure& C, const ImprovingMove& move) {
  if (!C.is_partition()) hypothesis("improving moves are stated for partition structures");
  if (move.agent < 1 || move.agent > a.agent_count())
    hypothesis("unknown moving agent");
  if (a.resource_of(move.agent) != move.from)
    hypothesis("agent is not on the declared departure resource");
  if (move.to == move.from || !inst.can_use(move.agent, move.to))
    hypothesis("declared target is not a feasible distinct resource");

  const Coalition& c = C[C.coalition_of(move.agent)];
  MoveCase actual;
  if (a.count(move.from) >= a.count(move.to) + 2) {
    actual = MoveCase::balance;
  } else if (a.count(move.from) == a.count(move.to) + 1 &&
             coalition_members_on(a, c, move.from) >=
                 coalition_members_on(a, c, move.to) + 2) {
    actual = MoveCase::coalition_balance;
  } else {
    hypothesis("move satisfies neither improving condition");
  }
  if (actual != move.kind) hypothesis("declared case tag does not match the counts");

  Allocation moved = apply_chain(a, Chain{{move.from, move.to}, {move.agent}});
  return balance_dominates(moved, a, C);
}

bool check_blocking_welfare_dominance(const Instance& inst, const Allocation& a,
                                      const Coalition& c, long long budget) {
  if (!blocks(inst, a, c, budget)) hypothesis("coalition does not block the allocation");
  bool all = true;
  for_each_induced(inst, a, c, budget, [&](const BlockingWitness& w) {
    if (!welfare_dominates(w.induced, a, c)) {
      all = false;
      return false;
    }
    return true;
  });
  return all;
}

bool check_stratum_bounds(const Instance& inst, const Allocation& a,
                          const Allocation& b, const Coalition& c,
                          const std::vector<ResourceId>& m_tilde) {
  std::vector<char> inside(static_cast<std::size_t>(inst.resource_count()), 0);
  for (ResourceId i : m_tilde) {
    if (!inst.resource_in_range(i)) hypothesis("agreeing set references an unknown resource");
    inside[static_cast<std::size_t>(i - 1)] = 1;
  }
  bool has_outside = false;
  for (ResourceId i = 1; i <= inst.resource_count(); ++i)
    has_outside = has_outside || !inside[static_cast<std::size_t>(i - 1)];
  if (!has_outside) hypothesis("the agreeing set must leave some resource outside");

  if (!welfare_dominates(b, a, c)) hypothesis("b does not welfare-dominate a");

  int n = inst.agent_count();
  for (int s = 1; s <= n; ++s) {
    int lhs = 0, rhs = 0;
    for (ResourceId i = 1; i <= inst.resource_count(); ++i) {
      if (!inside[static_cast<std::size_t>(i - 1)]) continue;
      if (a.count(i) == s) lhs += coalition_members_on(a, c, i);
      if (b.count(i) == s) rhs += coalition_members_on(b, c, i);
    }
    if (lhs != rhs)
      hypothesis("member counts over the agreeing set differ at some congestion level");
  }

  int k_max = 0, kbar_max = 0;
  for (ResourceId i = 1; i <= inst.resource_count(); ++i) {
    if (inside[static_cast<std::size_t>(i - 1)]) continue;
    k_max = std::max(k_max, a.count(i));
    kbar_max = std::max(kbar_max, b.count(i));
  }
  if (kbar_max > k_max) return false;

  int lhs = 0, rhs = 0;
  for (ResourceId i = 1; i <= inst.resource_count(); ++i) {
    if (inside[static_cast<std::size_t>(i - 1)]) continue;
    if (a.count(i) == k_max) lhs += coalition_members_on(a, c, i);
    if (b.count(i) == k_max) rhs += coalition_members_on(b, c, i);
  }
  return lhs >= rhs;
}

bool check_maximal_stability(const Instance& inst, const CoalitionStructure& C,
                             const Bounds& bounds) {
  std::vector<Allocation> maximal = maximal_allocations(inst, C, bounds);
  if (maximal.empty()) return false;
  for (const Allocation& a : maximal) {
    if (!is_nash(inst, a).first) return false;
    if (!is_pareto(inst, a, bounds).first) return false;
    if (!is_c_stable(inst, a, C, bounds).stable) return false;
  }
  return true;
}

ProofTrace check_reduction(const Instance& inst, const CoalitionStructure& C,
                           const Allocation& a, const Allocation& b,
                           const Coalition& c, const Bounds& bounds) {
  if (!C.is_partition()) hypothesis("the reduction is stated for partition structures");
  bool member_coalition = false;
  for (const Coalition& other : C.coalitions()) member_coalition |= other == c;
  if (!member_coalition) hypothesis("the blocking coalition is not part of the structure");
  {
    std::string bad = witness_violation(inst, assemble_witness(c, a, b));
    if (!bad.empty()) hypothesis("b is not induced when c blocks a: " + bad);
  }

  ProofTrace trace;

  // step 1: restrict every resource to the agents the two allocations place there
  std::vector<std::set<AgentId>> allowed(static_cast<std::size_t>(inst.resource_count()));
  for (AgentId j = 1; j <= inst.agent_count(); ++j) {
    allowed[static_cast<std::size_t>(a.resource_of(j) - 1)].insert(j);
    allowed[static_cast<std::size_t>(b.resource_of(j) - 1)].insert(j);
  }
  for (const auto& s : allowed) trace.restricted_access.emplace_back(s.begin(), s.end());

  auto feasible_under = [&](const Allocation& x) {
    for (AgentId j = 1; j <= inst.agent_count(); ++j)
      if (!allowed[static_cast<std::size_t>(x.resource_of(j) - 1)].count(j)) return false;
    return true;
  };

  trace.maximality_checked = inst.feasible_count() <= bounds.enum_bound;
  if (trace.maximality_checked) {
    for (const Allocation& mx : maximal_allocations(inst, C, bounds))
      trace.a_was_maximal = trace.a_was_maximal || mx == a;
    claim(!trace.a_was_maximal, "a maximal allocation admitted a blocking pair");
  }

  // step 2: swap out long chains until only length-2 chains remain;
  // each swap removes at least one mover, so n iterations suffice
  Allocation reduced = b;
  WelfareKernel welfare_before = welfare_kernel(reduced, c);
  int guard = inst.agent_count() * inst.resource_count() + 1;
  while (auto ch = find_chain(a, reduced, 3)) {
    claim(--guard > 0, "chain shortening did not terminate");
    AgentId j1 = ch->movers[0];
    AgentId j2 = ch->movers[1];
    ResourceId via = ch->resources[1];
    ResourceId target = ch->resources[2];

    auto& f_target = allowed[static_cast<std::size_t>(target - 1)];
    f_target.erase(j2);
    f_target.insert(j1);
    trace.swaps.push_back({j1, j2, via, target});

    Allocation next = swap_agents(reduced, j1, j2);
    claim(kernel(next) == kernel(reduced), "swap changed the kernel");
    claim(coalition_kernel(next, c) == coalition_kernel(reduced, c),
          "swap changed the coalition kernel");
    claim(welfare_kernel(next, c) == welfare_before, "swap changed the welfare kernel");
    claim(feasible_under(a) && feasible_under(next),
          "restriction update broke feasibility");
    claim(welfare_dominates(next, a, c), "welfare dominance was lost");
    reduced = std::move(next);
  }

  // stratify by how each resource differs between a and the reduced b
  for (ResourceId i = 1; i <= inst.resource_count(); ++i) {
    std::vector<AgentId> in_a, in_b;
    for (AgentId j = 1; j <= inst.agent_count(); ++j) {
      if (a.resource_of(j) == i) in_a.push_back(j);
      if (reduced.resource_of(j) == i) in_b.push_back(j);
    }
    bool a_in_b = std::includes(in_b.begin(), in_b.end(), in_a.begin(), in_a.end());
    bool b_in_a = std::includes(in_a.begin(), in_a.end(), in_b.begin(), in_b.end());
    if (a_in_b && b_in_a) {
      trace.unchanged.push_back(i);
    } else if (b_in_a) {
      trace.shrunk.push_back(i);
      trace.shrunk_by_count[a.count(i)].push_back(i);
    } else if (a_in_b) {
      trace.grown.push_back(i);
      trace.grown_by_count[a.count(i)].push_back(i);
    } else {
      claim(false, "a resource is neither unchanged nor shrunk nor grown");
    }
  }
  claim(!trace.shrunk.empty() && !trace.grown.empty(),
        "a blocking pair must change some resource");

  int residual_movers = 0;
  for (AgentId j = 1; j <= inst.agent_count(); ++j) {
    if (a.resource_of(j) == reduced.resource_of(j)) continue;
    ++residual_movers;
    ResourceId from = a.resource_of(j);
    ResourceId to = reduced.resource_of(j);
    claim(std::count(trace.shrunk.begin(), trace.shrunk.end(), from) == 1,
          "a residual chain departs outside the shrunk stratum");
    claim(std::count(trace.grown.begin(), trace.grown.end(), to) == 1,
          "a residual chain arrives outside the grown stratum");
  }
  trace.final_chain_lengths.assign(static_cast<std::size_t>(residual_movers), 2);

  for (ResourceId i : trace.shrunk) trace.k_max = std::max(trace.k_max, a.count(i));
  for (ResourceId i : trace.grown) trace.k_max = std::max(trace.k_max, a.count(i));
  for (ResourceId i : trace.shrunk) trace.kbar_max = std::max(trace.kbar_max, reduced.count(i));
  for (ResourceId i : trace.grown) trace.kbar_max = std::max(trace.kbar_max, reduced.count(i));
  claim(trace.kbar_max <= trace.k_max,
        "the reduced allocation tops the original congestion on the changed resources");
  for (const auto& [count, resources] : trace.grown_by_count)
    claim(count < trace.k_max, "a grown resource sits at or above the top stratum");

  // top-stratum matching: each shrunk top resource that feeds a grown
  // (k_max-1)-resource is matched to its smallest such target; targets
  // receive at most one mover, so the matching is injective
  std::map<ResourceId, int> incoming;
  for (ResourceId i : trace.grown)
    if (a.count(i) == trace.k_max - 1)
      incoming[i] = reduced.count(i) - a.count(i);
  for (const auto& [target, movers] : incoming)
    claim(movers <= 1, "a top-stratum target receives two movers");
  std::set<ResourceId> taken;
  auto top = trace.shrunk_by_count.find(trace.k_max);
  if (top != trace.shrunk_by_count.end()) {
    for (ResourceId source : top->second) {
      ResourceId best = 0;
      for (AgentId j = 1; j <= inst.agent_count(); ++j) {
        if (a.resource_of(j) != source) continue;
        ResourceId to = reduced.resource_of(j);
        if (to == source || !incoming.count(to)) continue;
        if (best == 0 || to < best) best = to;
      }
      if (best != 0) {
        claim(taken.insert(best).second, "top-stratum matching is not injective");
        trace.matched.emplace_back(source, best);
      }
    }
  }

  trace.reduced = std::move(reduced);
  return trace;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

namespace {

struct CaseOutcome {
  enum Status { pass, fail, rejected } status = pass;
  std::string message;
};

using CaseFn = std::function<CaseOutcome(std::uint64_t index)>;

SuiteReport run_cases(const std::string& name, const SuiteOptions& opts,
                      long long default_cases, const CaseFn& fn) {
  SuiteReport report;
  report.name = name;
  long long target = opts.cases > 0 ? opts.cases : default_cases;
  long long cap = target * 50 + 1000;

  std::uint64_t index = 0;
  while (report.cases < target && static_cast<long long>(index) < cap) {
    std::size_t chunk = static_cast<std::size_t>(
        std::min<long long>(256, target - report.cases));
    auto outcomes = parallel_map(chunk, opts.threads, [&](std::size_t t) -> CaseOutcome {
      std::uint64_t case_index = index + t;
      try {
        return fn(case_index);
      } catch (const std::exception& e) {
        std::ostringstream os;
        os << "case " << case_index << " (seed " << opts.seed << "): " << e.what();
        return {CaseOutcome::fail, os.str()};
      }
    });
    for (const auto& outcome : outcomes) {
      if (outcome.status == CaseOutcome::rejected) {
        ++report.rejected;
        continue;
      }
      ++report.cases;
      if (outcome.status == CaseOutcome::fail) {
        ++report.failures;
        if (report.failure_messages.size() < 10)
          report.failure_messages.push_back(outcome.message);
      }
    }
    index += chunk;
  }
  if (report.cases < target) {
    ++report.failures;
    std::ostringstream os;
    os << "only " << report.cases << " of " << target
       << " cases accepted before the sampling cap";
    report.failure_messages.push_back(os.str());
  }
  return report;
}

std::string case_tag(std::uint64_t seed, std::uint64_t index, const std::string& what) {
  std::ostringstream os;
  os << "case " << index << " (seed " << seed << "): " << what;
  return os.str();
}

GeneratorConfig small_config(std::uint64_t seed) {
  GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.n_min = 2;
  cfg.n_max = 6;
  cfg.m_min = 2;
  cfg.m_max = 3;
  cfg.access_density = 0.7;
  cfg.coalition_shape = CoalitionShape::random_partition;
  cfg.max_coalition_size = 4;
  return cfg;
}

}  // namespace

SuiteReport run_swap_invariance_suite(const SuiteOptions& opts) {
  GeneratorConfig cfg = small_config(opts.seed);
  cfg.n_max = 8;
  return run_cases("swap-invariance", opts, 10'000, [&](std::uint64_t index) -> CaseOutcome {
    Rng rng(mix_seed(opts.seed ^ 0x5157, index));
    for (int attempt = 0; attempt < 100; ++attempt) {
      auto [inst, C] = gen_case(cfg, index * 100 + static_cast<std::uint64_t>(attempt));
      Allocation a = random_feasible(inst, rng);
      std::vector<std::pair<AgentId, AgentId>> candidates;
      for (const Coalition& c : C.coalitions())
        for (std::size_t x = 0; x < c.size(); ++x)
          for (std::size_t y = x + 1; y < c.size(); ++y)
            if (a.resource_of(c[x]) != a.resource_of(c[y]))
              candidates.emplace_back(c[x], c[y]);
      if (candidates.empty()) continue;
      auto [j1, j2] = rng.pick(candidates);
      if (check_swap_invariance(a, C, j1, j2)) return {};
      return {CaseOutcome::fail,
              case_tag(opts.seed, index, "swap changed some kernel value")};
    }
    return {CaseOutcome::rejected, {}};
  });
}

SuiteReport run_single_move_suite(const SuiteOptions& opts) {
  GeneratorConfig cfg = small_config(opts.seed);
  cfg.n_min = 1;
  return run_cases("single-move-dominance", opts, 200, [&](std::uint64_t index) -> CaseOutcome {
    auto [inst, C] = gen_case(cfg, index);
    Bounds bounds;
    bool ok = for_each_feasible(inst, bounds.enum_bound, [&](const Allocation& a) {
      for (const ImprovingMove& move : improving_single_moves(inst, a, C))
        if (!check_single_move_dominance(inst, a, C, move)) return false;
      return true;
    });
    if (!ok)
      return {CaseOutcome::fail,
              case_tag(opts.seed, index, "an improving move failed to dominate")};
    return {};
  });
}

SuiteReport run_blocking_welfare_suite(const SuiteOptions& opts) {
  GeneratorConfig cfg = small_config(opts.seed);
  return run_cases("blocking-welfare-dominance", opts, 1'000,
                   [&](std::uint64_t index) -> CaseOutcome {
    Rng rng(mix_seed(opts.seed ^ 0xB10C, index));
    Bounds bounds;
    for (int attempt = 0; attempt < 100; ++attempt) {
      auto [inst, C] = gen_case(cfg, index * 100 + static_cast<std::uint64_t>(attempt));
      Allocation a = random_feasible(inst, rng);
      const Coalition& c = C[static_cast<std::size_t>(
          rng.uniform(0, static_cast<int>(C.size()) - 1))];
      if (!blocks(inst, a, c, bounds.search_bound)) continue;
      if (check_blocking_welfare_dominance(inst, a, c, bounds.search_bound)) return {};
      return {CaseOutcome::fail,
              case_tag(opts.seed, index, "an induced allocation failed welfare dominance")};
    }
    return {CaseOutcome::rejected, {}};
  });
}

SuiteReport run_stratum_bounds_suite(const SuiteOptions& opts) {
  GeneratorConfig cfg = small_config(opts.seed);
  return run_cases("stratum-bounds", opts, 200, [&](std::uint64_t index) -> CaseOutcome {
    Rng rng(mix_seed(opts.seed ^ 0x57A7, index));
    Bounds bounds;
    auto [inst, C] = gen_case(cfg, index);
    Allocation a = random_feasible(inst, rng);
    const Coalition& c = C[static_cast<std::size_t>(
        rng.uniform(0, static_cast<int>(C.size()) - 1))];
    auto witness = blocks(inst, a, c, bounds.search_bound);
    if (!witness) return {CaseOutcome::rejected, {}};
    const Allocation& b = witness->induced;
    std::vector<ResourceId> agreeing;
    for (ResourceId i = 1; i <= inst.resource_count(); ++i)
      if (a.agents_on(i) == b.agents_on(i)) agreeing.push_back(i);
    if (!check_stratum_bounds(inst, a, b, c, agreeing))
      return {CaseOutcome::fail,
              case_tag(opts.seed, index, "stratum bound conclusion failed")};
    return {};
  });
}

std::pair<Instance, CoalitionStructure> stability_suite_case(std::uint64_t seed,
                                                             std::uint64_t index) {
  GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.n_min = 1;
  cfg.n_max = 5;
  cfg.m_min = 1;
  cfg.m_max = 3;
  Rng rng(mix_seed(seed ^ 0x7E01, index));
  cfg.access_density = 0.2 + 0.8 * rng.uniform01();
  cfg.coalition_shape = CoalitionShape::random_partition;
  cfg.max_coalition_size = 5;
  return gen_case(cfg, index);
}

SuiteReport run_maximal_stability_suite(const SuiteOptions& opts) {
  return run_cases("maximal-stability", opts, 1'000, [&](std::uint64_t index) -> CaseOutcome {
    auto [inst, C] = stability_suite_case(opts.seed, index);
    if (!check_maximal_stability(inst, C))
      return {CaseOutcome::fail,
              case_tag(opts.seed, index, "a maximal allocation failed an axiom")};
    return {};
  });
}

SuiteReport run_solver_certification_suite(const SuiteOptions& opts) {
  return run_cases("solver-certification", opts, 1'000,
                   [&](std::uint64_t index) -> CaseOutcome {
    auto [inst, C] = stability_suite_case(opts.seed, index);

    SolveOptions heuristic;
    heuristic.mode = SolveMode::heuristic;
    SolveResult hres = find_stable(inst, C, heuristic);
    StabilityReport recheck = stability_report(inst, hres.allocation, C);
    if (!recheck.all_axioms())
      return {CaseOutcome::fail,
              case_tag(opts.seed, index, "heuristic result failed recertification")};

    SolveResult xres = find_stable(inst, C, SolveOptions{});
    bool in_maximal = false;
    for (const Allocation& mx : maximal_allocations(inst, C))
      in_maximal = in_maximal || mx == xres.allocation;
    if (!in_maximal || !xres.report.all_axioms())
      return {CaseOutcome::fail,
              case_tag(opts.seed, index, "exact result is not a certified maximal allocation")};
    return {};
  });
}

SuiteReport run_reduction_suite(const SuiteOptions& opts) {
  GeneratorConfig cfg = small_config(opts.seed);
  return run_cases("reduction", opts, 200, [&](std::uint64_t index) -> CaseOutcome {
    Rng rng(mix_seed(opts.seed ^ 0x5E0C, index));
    Bounds bounds;
    for (int attempt = 0; attempt < 100; ++attempt) {
      auto [inst, C] = gen_case(cfg, index * 100 + static_cast<std::uint64_t>(attempt));
      Allocation a = random_feasible(inst, rng);
      const Coalition& c = C[static_cast<std::size_t>(
          rng.uniform(0, static_cast<int>(C.size()) - 1))];
      auto witness = blocks(inst, a, c, bounds.search_bound);
      if (!witness) continue;

      ProofTrace trace = check_reduction(inst, C, a, witness->induced, c, bounds);
      for (int len : trace.final_chain_lengths)
        if (len != 2)
          return {CaseOutcome::fail,
                  case_tag(opts.seed, index, "a residual chain is not of length 2")};

      // vacuity: maximal allocations admit no blocking coalition at all
      for (const Allocation& mx : maximal_allocations(inst, C, bounds))
        for (const Coalition& other : C.coalitions())
          if (blocks(inst, mx, other, bounds.search_bound))
            return {CaseOutcome::fail,
                    case_tag(opts.seed, index, "a maximal allocation was blocked")};
      return {};
    }
    return {CaseOutcome::rejected, {}};
  });
}

// ---------------------------------------------------------------------------
// Bundled regression examples
// ---------------------------------------------------------------------------

namespace {

struct ExampleChecker {
  ExampleResult result;

  explicit ExampleChecker(std::string name) { result.name = std::move(name); }

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      result.passed = false;
      result.failures.push_back(what);
    }
  }
};

}  // namespace

std::vector<ExampleResult> reproduce_examples() {
  std::vector<ExampleResult> results;
  Bounds bounds;

  {
    ExampleChecker check("example 1: kernels on 8 agents / 4 resources");
    auto fx = examples::kernel_demo();
    check.expect(kernel(fx.a).entries == std::vector<int>({3, 3, 2, 0}),
                 "kernel is not (3,3,2,0)");
    check.expect(coalition_kernel(fx.a, fx.c).entries == std::vector<int>({2, 1, 0, 0}),
                 "coalition kernel is not (2,1,0,0)");
    check.expect(welfare_kernel(fx.a, fx.c).entries ==
                     std::vector<int>({0, 0, 0, 0, 0, 1, 2, 0}),
                 "welfare kernel is not (0,0,0,0,0,1,2,0)");
    check.expect(cost(fx.a, 3) == 3, "agent 3 does not pay 3");
    check.expect(cost(fx.a, 1) == 2, "agent 1 does not pay 2");
    results.push_back(std::move(check.result));
  }

  {
    ExampleChecker check("example 2: stable yet not maximal on 15 agents / 2 resources");
    auto fx = examples::stable_not_maximal();
    check.expect(fx.inst.feasible_count() == 32768, "feasible space is not 2^15");
    check.expect(is_nash(fx.inst, fx.a).first, "a is not a Nash equilibrium");
    check.expect(is_pareto(fx.inst, fx.a, bounds).first, "a is not Pareto efficient");
    check.expect(is_c_stable(fx.inst, fx.a, fx.C, bounds).stable, "a is not C-stable");
    check.expect(balance_dominates(fx.improved, fx.a, fx.C),
                 "the rebalanced allocation does not dominate a");
    bool a_maximal = false;
    for (const Allocation& mx : maximal_allocations(fx.inst, fx.C, bounds))
      a_maximal = a_maximal || mx == fx.a;
    check.expect(!a_maximal, "a is unexpectedly maximal");
    results.push_back(std::move(check.result));
  }

  {
    ExampleChecker check("example 3: blocking without dominance on 18 agents / 4 resources");
    auto fx = examples::non_monotone_blocking();
    check.expect(blocks(fx.inst, fx.a, fx.c, bounds.search_bound).has_value(),
                 "the 13-agent coalition does not block a");
    check.expect(witness_violation(fx.inst, assemble_witness(fx.c, fx.a, fx.induced)).empty(),
                 "the recorded induced allocation is not a valid witness");
    check.expect(kernel(fx.a).entries == std::vector<int>({5, 5, 4, 4}),
                 "kernel of a is not (5,5,4,4)");
    check.expect(coalition_kernel(fx.a, fx.c).entries == std::vector<int>({4, 4, 4, 1}),
                 "coalition kernel of a is not (4,4,4,1)");
    check.expect(coalition_kernel(fx.induced, fx.c).entries == std::vector<int>({5, 3, 3, 2}),
                 "coalition kernel of the induced allocation is not (5,3,3,2)");
    check.expect(!balance_dominates(fx.induced, fx.a, fx.C),
                 "the induced allocation unexpectedly balance-dominates a");
    check.expect(welfare_dominates(fx.induced, fx.a, fx.c),
                 "the induced allocation does not welfare-dominate a");
    results.push_back(std::move(check.result));
  }

  {
    ExampleChecker check("example 4: overlapping coalitions on 3 agents / 2 resources");
    auto fx = examples::overlap_no_stable();
    std::vector<Allocation> all = all_feasible(fx.inst, bounds.enum_bound);
    check.expect(all.size() == 2, "feasible space does not have exactly 2 allocations");
    for (const Allocation& a : all) {
      auto res = is_c_stable(fx.inst, a, fx.C, bounds);
      check.expect(!res.stable, "allocation " + a.to_string() + " is unexpectedly stable");
      if (res.witness)
        check.expect(witness_violation(fx.inst, *res.witness).empty(),
                     "the blocking witness does not re-validate");
    }
    results.push_back(std::move(check.result));
  }

  return results;
}

}  // namespace iscg::verify
