#include "iscg/instance.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace iscg {

long long Instance::feasible_count() const {
  constexpr long long kMax = std::numeric_limits<long long>::max();
  long long product = 1;
  for (const auto& options : by_agent_) {
    long long k = static_cast<long long>(options.size());
    if (k == 0) return 0;
    if (product > kMax / k) return kMax;  // saturate
    product *= k;
  }
  return product;
}

Instance validate_instance(const RawInstance& raw) {
  std::vector<std::string> issues;

  if (raw.agents < 1 || raw.resources < 1) {
    std::ostringstream os;
    os << "empty game: agents=" << raw.agents << " resources=" << raw.resources;
    issues.push_back(os.str());
    throw Error(Errc::empty_game, issues.front());
  }
  if (static_cast<int>(raw.access.size()) != raw.agents) {
    std::ostringstream os;
    os << "access must list one resource set per agent (got " << raw.access.size()
       << " for " << raw.agents << " agents)";
    throw Error(Errc::not_total, os.str());
  }

  Instance inst;
  inst.n_ = raw.agents;
  inst.m_ = raw.resources;
  inst.by_agent_.assign(static_cast<std::size_t>(raw.agents), {});
  inst.by_resource_.assign(static_cast<std::size_t>(raw.resources), {});
  inst.mask_.assign(static_cast<std::size_t>(raw.agents) * raw.resources, 0);

  Errc worst = Errc::agent_without_access;
  for (AgentId j = 1; j <= raw.agents; ++j) {
    auto options = raw.access[static_cast<std::size_t>(j - 1)];
    std::sort(options.begin(), options.end());
    options.erase(std::unique(options.begin(), options.end()), options.end());
    bool in_range = true;
    for (ResourceId i : options) {
      if (i < 1 || i > raw.resources) {
        std::ostringstream os;
        os << "agent " << j << ": resource id " << i << " out of range 1.."
           << raw.resources;
        issues.push_back(os.str());
        worst = Errc::id_out_of_range;
        in_range = false;
      }
    }
    if (!in_range) continue;
    if (options.empty()) {
      std::ostringstream os;
      os << "agent " << j << " has no accessible resource";
      issues.push_back(os.str());
      continue;
    }
    inst.by_agent_[static_cast<std::size_t>(j - 1)] = options;
    for (ResourceId i : options) {
      inst.by_resource_[static_cast<std::size_t>(i - 1)].push_back(j);
      inst.mask_[static_cast<std::size_t>(j - 1) * raw.resources + (i - 1)] = 1;
    }
  }

  if (!issues.empty()) {
    std::ostringstream os;
    os << "invalid instance:";
    for (const auto& s : issues) os << "\n  - " << s;
    throw Error(worst, os.str());
  }
  return inst;
}

Instance instance_from_resource_sets(int agents, int resources,
                                     const std::vector<std::vector<AgentId>>& permitted) {
  if (static_cast<int>(permitted.size()) != resources)
    throw Error(Errc::id_out_of_range, "one permitted set per resource required");
  RawInstance raw;
  raw.agents = agents;
  raw.resources = resources;
  raw.access.assign(static_cast<std::size_t>(std::max(agents, 0)), {});
  for (ResourceId i = 1; i <= resources; ++i) {
    for (AgentId j : permitted[static_cast<std::size_t>(i - 1)]) {
      if (j < 1 || j > agents) {
        std::ostringstream os;
        os << "resource " << i << ": agent id " << j << " out of range 1.." << agents;
        throw Error(Errc::id_out_of_range, os.str());
      }
      raw.access[static_cast<std::size_t>(j - 1)].push_back(i);
    }
  }
  return validate_instance(raw);
}

Instance full_access_instance(int agents, int resources) {
  RawInstance raw;
  raw.agents = agents;
  raw.resources = resources;
  std::vector<ResourceId> all(static_cast<std::size_t>(std::max(resources, 0)));
  for (int i = 0; i < resources; ++i) all[static_cast<std::size_t>(i)] = i + 1;
  raw.access.assign(static_cast<std::size_t>(std::max(agents, 0)), all);
  return validate_instance(raw);
}

}  // namespace iscg
