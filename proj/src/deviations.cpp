#include "iscg/deviations.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace iscg {

bool is_chain_between(const Allocation& source, const Allocation& target,
                      const Chain& ch) {
  if (ch.resources.size() < 2) return false;
  if (ch.movers.size() + 1 != ch.resources.size()) return false;
  for (std::size_t t = 0; t + 1 < ch.resources.size(); ++t) {
    ResourceId from = ch.resources[t];
    ResourceId to = ch.resources[t + 1];
    AgentId j = ch.movers[t];
    if (from == to) return false;
    if (j < 1 || j > source.agent_count()) return false;
    if (source.resource_of(j) != from) return false;
    if (target.resource_of(j) != to) return false;
  }
  return true;
}

Allocation apply_chain(const Allocation& a, const Chain& ch) {
  if (ch.resources.size() < 2 || ch.movers.size() + 1 != ch.resources.size())
    throw Error(Errc::chain_invalid, "chain must have s >= 2 resources and s-1 movers");
  std::vector<ResourceId> assignment = a.assignment();
  for (std::size_t t = 0; t < ch.movers.size(); ++t) {
    ResourceId from = ch.resources[t];
    ResourceId to = ch.resources[t + 1];
    AgentId j = ch.movers[t];
    std::ostringstream os;
    if (from == to) {
      os << "chain step " << t + 1 << ": departure equals arrival (" << from << ")";
      throw Error(Errc::chain_invalid, os.str());
    }
    if (j < 1 || j > a.agent_count()) {
      os << "chain step " << t + 1 << ": unknown mover " << j;
      throw Error(Errc::chain_invalid, os.str());
    }
    if (assignment[static_cast<std::size_t>(j - 1)] != from) {
      os << "chain step " << t + 1 << ": mover " << j << " is on resource "
         << assignment[static_cast<std::size_t>(j - 1)] << ", not " << from;
      throw Error(Errc::chain_invalid, os.str());
    }
    assignment[static_cast<std::size_t>(j - 1)] = to;
  }
  return Allocation(std::move(assignment), a.resource_count(), false);
}

namespace {

// Depth-first path search over the mover graph (edge j: a(j) -> b(j)),
// movers used at most once, smallest ids first.
bool extend_chain(const Allocation& a, const Allocation& b,
                  const std::vector<std::vector<AgentId>>& movers_by_source,
                  std::vector<char>& used, Chain& ch, std::size_t want_len) {
  if (ch.resources.size() >= want_len) return true;
  ResourceId here = ch.resources.back();
  for (AgentId j : movers_by_source[static_cast<std::size_t>(here - 1)]) {
    if (used[static_cast<std::size_t>(j - 1)]) continue;
    used[static_cast<std::size_t>(j - 1)] = 1;
    ch.movers.push_back(j);
    ch.resources.push_back(b.resource_of(j));
    if (extend_chain(a, b, movers_by_source, used, ch, want_len)) return true;
    ch.resources.pop_back();
    ch.movers.pop_back();
    used[static_cast<std::size_t>(j - 1)] = 0;
  }
  return false;
}

}  // namespace

std::optional<Chain> find_chain(const Allocation& a, const Allocation& b,
                                std::size_t min_length) {
  if (min_length < 2) min_length = 2;
  if (a.agent_count() != b.agent_count() || a.resource_count() != b.resource_count())
    throw Error(Errc::length_mismatch, "chain search over different games");

  std::vector<std::vector<AgentId>> movers_by_source(
      static_cast<std::size_t>(a.resource_count()));
  bool any = false;
  for (AgentId j = 1; j <= a.agent_count(); ++j)
    if (a.resource_of(j) != b.resource_of(j)) {
      movers_by_source[static_cast<std::size_t>(a.resource_of(j) - 1)].push_back(j);
      any = true;
    }
  if (!any) return std::nullopt;

  std::vector<char> used(static_cast<std::size_t>(a.agent_count()), 0);
  for (ResourceId start = 1; start <= a.resource_count(); ++start) {
    if (movers_by_source[static_cast<std::size_t>(start - 1)].empty()) continue;
    Chain ch;
    ch.resources.push_back(start);
    if (extend_chain(a, b, movers_by_source, used, ch, min_length)) return ch;
  }
  return std::nullopt;
}

Allocation swap_agents(const Allocation& a, AgentId j1, AgentId j2) {
  ResourceId i1 = a.resource_of(j1);
  ResourceId i2 = a.resource_of(j2);
  if (i1 == i2) {
    std::ostringstream os;
    os << "agents " << j1 << " and " << j2 << " share resource " << i1;
    throw Error(Errc::same_resource, os.str());
  }
  std::vector<ResourceId> assignment = a.assignment();
  assignment[static_cast<std::size_t>(j1 - 1)] = i2;
  assignment[static_cast<std::size_t>(j2 - 1)] = i1;
  return Allocation(std::move(assignment), a.resource_count(), false);
}

BlockingWitness assemble_witness(const Coalition& c, const Allocation& original,
                                 const Allocation& induced) {
  MemberCosts costs;
  costs.reserve(c.size());
  for (AgentId j : c) costs.emplace_back(j, cost(original, j), cost(induced, j));
  return BlockingWitness{c, original, induced, std::move(costs)};
}

std::string witness_violation(const Instance& inst, const BlockingWitness& w) {
  const Allocation& a = w.original;
  const Allocation& b = w.induced;
  if (w.coalition.empty()) return "empty coalition";
  if (a.agent_count() != inst.agent_count() || b.agent_count() != inst.agent_count() ||
      a.resource_count() != inst.resource_count() ||
      b.resource_count() != inst.resource_count())
    return "allocation shape does not match the instance";
  for (AgentId j : w.coalition)
    if (!inst.agent_in_range(j)) return "coalition member out of range";
  if (!is_feasible(inst, b)) return "induced allocation is infeasible";
  for (AgentId j = 1; j <= inst.agent_count(); ++j) {
    if (coalition_contains(w.coalition, j)) continue;
    if (a.resource_of(j) != b.resource_of(j)) {
      std::ostringstream os;
      os << "non-member " << j << " moved";
      return os.str();
    }
  }
  bool strict = false;
  for (AgentId j : w.coalition) {
    int before = cost(a, j);
    int after = cost(b, j);
    if (after > before) {
      std::ostringstream os;
      os << "member " << j << " got worse (" << before << " -> " << after << ")";
      return os.str();
    }
    strict = strict || after < before;
  }
  if (!strict) return "no member strictly improves";
  if (w.member_costs.size() != w.coalition.size())
    return "member cost list does not cover the coalition";
  for (std::size_t t = 0; t < w.coalition.size(); ++t) {
    auto [j, before, after] = w.member_costs[t];
    if (j != w.coalition[t] || before != cost(a, j) || after != cost(b, j))
      return "member cost list is inconsistent";
  }
  return {};
}

namespace {

struct BlockingSearch {
  const Instance& inst;
  const Allocation& a;
  const Coalition& members;
  long long budget;
  long long attempts = 0;

  std::vector<int> base;     // non-member congestion per resource
  std::vector<int> placed;   // members placed so far per resource
  std::vector<int> min_old;  // min old cost among placed members per resource
  std::vector<int> old_cost;           // per member position
  std::vector<ResourceId> placement;   // per member position
  const std::function<bool(const BlockingWitness&)>* visit = nullptr;
  bool stopped = false;

  BlockingSearch(const Instance& inst_, const Allocation& a_, const Coalition& c)
      : inst(inst_), a(a_), members(c), budget(0) {
    base.assign(static_cast<std::size_t>(inst.resource_count()), 0);
    placed = base;
    min_old.assign(static_cast<std::size_t>(inst.resource_count()),
                   std::numeric_limits<int>::max());
    for (ResourceId i = 1; i <= inst.resource_count(); ++i)
      base[static_cast<std::size_t>(i - 1)] = a.count(i);
    old_cost.reserve(members.size());
    for (AgentId j : members) {
      old_cost.push_back(cost(a, j));
      --base[static_cast<std::size_t>(a.resource_of(j) - 1)];
    }
    placement.assign(members.size(), 0);
  }

  BlockingWitness make_witness() const {
    std::vector<ResourceId> assignment = a.assignment();
    for (std::size_t t = 0; t < members.size(); ++t)
      assignment[static_cast<std::size_t>(members[t] - 1)] = placement[t];
    Allocation induced(std::move(assignment), a.resource_count(), true);
    MemberCosts costs;
    costs.reserve(members.size());
    for (std::size_t t = 0; t < members.size(); ++t)
      costs.emplace_back(members[t], old_cost[t], cost(induced, members[t]));
    return BlockingWitness{members, a, induced, costs};
  }

  // Lexicographic depth-first enumeration of member reassignments with
  // sound pruning: counts only grow along a branch, so a placement that
  // already overloads some placed member can never complete into a
  // witness. Prunes therefore never skip a witness, and the first leaf
  // accepted is the lexicographically first witness.
  bool descend(std::size_t t) {
    if (t == members.size()) {
      bool strict = false;
      for (std::size_t s = 0; s < members.size(); ++s) {
        std::size_t r = static_cast<std::size_t>(placement[s] - 1);
        if (base[r] + placed[r] < old_cost[s]) {
          strict = true;
          break;
        }
      }
      if (!strict) return true;
      if (!(*visit)(make_witness())) {
        stopped = true;
        return false;
      }
      return true;
    }
    for (ResourceId r : inst.accessible(members[t])) {
      if (++attempts > budget) {
        std::ostringstream os;
        os << "blocking search for coalition of " << members.size()
           << " exceeded its budget of " << budget << " placement attempts";
        throw Error(Errc::search_bound_exceeded, os.str());
      }
      std::size_t ri = static_cast<std::size_t>(r - 1);
      int congestion = base[ri] + placed[ri] + 1;
      if (congestion > old_cost[t] || congestion > min_old[ri]) continue;
      ++placed[ri];
      int saved = min_old[ri];
      min_old[ri] = std::min(min_old[ri], old_cost[t]);
      placement[t] = r;
      bool keep_going = descend(t + 1);
      min_old[ri] = saved;
      --placed[ri];
      if (!keep_going) return false;
    }
    return true;
  }
};

}  // namespace

bool for_each_induced(const Instance& inst, const Allocation& a, const Coalition& c,
                      long long budget,
                      const std::function<bool(const BlockingWitness&)>& visit) {
  // normalize: the search and the canonical order assume ascending,
  // duplicate-free members
  Coalition members = make_coalition(inst.agent_count(), c);
  BlockingSearch search(inst, a, members);
  search.budget = budget;
  search.visit = &visit;
  search.descend(0);
  return !search.stopped;
}

std::optional<BlockingWitness> blocks(const Instance& inst, const Allocation& a,
                                      const Coalition& c, long long budget) {
  std::optional<BlockingWitness> found;
  for_each_induced(inst, a, c, budget, [&](const BlockingWitness& w) {
    found = w;
    return false;
  });
  return found;
}

std::vector<ImprovingMove> improving_single_moves(const Instance& inst,
                                                  const Allocation& a,
                                                  const CoalitionStructure& C) {
  if (!C.is_partition())
    throw Error(Errc::not_a_partition, "improving moves require a partition structure");

  // coalition-member congestion per (coalition, resource)
  std::vector<std::vector<int>> members_on(
      C.size(), std::vector<int>(static_cast<std::size_t>(a.resource_count()), 0));
  for (AgentId j = 1; j <= a.agent_count(); ++j)
    ++members_on[C.coalition_of(j)][static_cast<std::size_t>(a.resource_of(j) - 1)];

  std::vector<ImprovingMove> moves;
  for (AgentId j = 1; j <= a.agent_count(); ++j) {
    ResourceId from = a.resource_of(j);
    std::size_t ci = C.coalition_of(j);
    for (ResourceId to : inst.accessible(j)) {
      if (to == from) continue;
      if (a.count(from) >= a.count(to) + 2) {
        moves.push_back({j, from, to, MoveCase::balance});
      } else if (a.count(from) == a.count(to) + 1 &&
                 members_on[ci][static_cast<std::size_t>(from - 1)] >=
                     members_on[ci][static_cast<std::size_t>(to - 1)] + 2) {
        moves.push_back({j, from, to, MoveCase::coalition_balance});
      }
    }
  }
  return moves;
}

}  // namespace iscg
