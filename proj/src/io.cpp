#include "iscg/io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace iscg::io {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(Errc::parse_error, what); }

const json& field(const json& obj, const char* key, const char* context) {
  auto it = obj.find(key);
  if (it == obj.end()) bad(std::string(context) + ": missing key \"" + key + "\"");
  return *it;
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const char* context) {
  if (!obj.is_object()) bad(std::string(context) + ": expected a JSON object");
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* ok : allowed) known = known || key == ok;
    if (!known) bad(std::string(context) + ": unknown key \"" + key + "\"");
  }
}

int as_int(const json& v, const char* context) {
  if (!v.is_number_integer()) bad(std::string(context) + ": expected an integer");
  return v.get<int>();
}

std::vector<int> as_int_array(const json& v, const char* context) {
  if (!v.is_array()) bad(std::string(context) + ": expected an array");
  std::vector<int> out;
  out.reserve(v.size());
  for (const auto& e : v) out.push_back(as_int(e, context));
  return out;
}

json witness_to_json(const BlockingWitness& w) {
  json out;
  out["coalition"] = w.coalition;
  out["induced"] = w.induced.assignment();
  json costs = json::array();
  for (auto [j, before, after] : w.member_costs) costs.push_back({j, before, after});
  out["member_costs"] = std::move(costs);
  return out;
}

BlockingWitness witness_from_json(const Instance& inst, const Allocation& original,
                                  const json& v, const char* context) {
  reject_unknown(v, {"coalition", "induced", "member_costs", "coalition_index"}, context);
  BlockingWitness w;
  w.coalition = make_coalition(inst.agent_count(),
                               as_int_array(field(v, "coalition", context), context));
  w.original = original;
  w.induced = validate_allocation(inst, as_int_array(field(v, "induced", context), context));
  const json& costs = field(v, "member_costs", context);
  if (!costs.is_array()) bad(std::string(context) + ": member_costs must be an array");
  for (const auto& entry : costs) {
    auto triple = as_int_array(entry, context);
    if (triple.size() != 3)
      bad(std::string(context) + ": member_costs entries are [agent, old, new]");
    w.member_costs.emplace_back(triple[0], triple[1], triple[2]);
  }
  return w;
}

CoalitionStructure structure_from_json(int agents, const json& coalitions,
                                       const std::string& mode, const char* context) {
  if (!coalitions.is_array()) bad(std::string(context) + ": coalitions must be an array");
  std::vector<Coalition> cs;
  for (const auto& entry : coalitions) cs.push_back(as_int_array(entry, context));
  if (mode == "partition") return CoalitionStructure::partition(agents, std::move(cs));
  if (mode == "family") return CoalitionStructure::family(agents, std::move(cs));
  bad(std::string(context) + ": coalition_mode must be \"partition\" or \"family\"");
}

json parse_text(const std::string& text, const char* context) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded()) bad(std::string(context) + ": malformed JSON");
  return doc;
}

}  // namespace

InstanceFile parse_instance_text(const std::string& text) {
  json doc = parse_text(text, "instance");
  reject_unknown(doc, {"agents", "resources", "access", "coalitions", "coalition_mode"},
                 "instance");

  RawInstance raw;
  raw.agents = as_int(field(doc, "agents", "instance"), "instance.agents");
  raw.resources = as_int(field(doc, "resources", "instance"), "instance.resources");
  const json& access = field(doc, "access", "instance");
  if (!access.is_array()) bad("instance.access: expected an array of per-agent arrays");
  for (const auto& entry : access) raw.access.push_back(as_int_array(entry, "instance.access"));

  InstanceFile file{validate_instance(raw), std::nullopt};
  if (doc.contains("coalitions")) {
    std::string mode = "partition";
    if (doc.contains("coalition_mode")) {
      if (!doc["coalition_mode"].is_string())
        bad("instance.coalition_mode: expected a string");
      mode = doc["coalition_mode"].get<std::string>();
    }
    file.structure =
        structure_from_json(raw.agents, doc["coalitions"], mode, "instance.coalitions");
  } else if (doc.contains("coalition_mode")) {
    bad("instance.coalition_mode given without coalitions");
  }
  return file;
}

InstanceFile load_instance(const std::string& path) {
  return parse_instance_text(read_file(path));
}

Allocation parse_allocation_text(const Instance& inst, const std::string& text) {
  json doc = parse_text(text, "allocation");
  reject_unknown(doc, {"assignment"}, "allocation");
  return validate_allocation(
      inst, as_int_array(field(doc, "assignment", "allocation"), "allocation.assignment"));
}

Allocation load_allocation(const std::string& path, const Instance& inst) {
  return parse_allocation_text(inst, read_file(path));
}

std::string emit_instance(const Instance& inst,
                          const std::optional<CoalitionStructure>& structure) {
  json doc;
  doc["agents"] = inst.agent_count();
  doc["resources"] = inst.resource_count();
  json access = json::array();
  for (AgentId j = 1; j <= inst.agent_count(); ++j) access.push_back(inst.accessible(j));
  doc["access"] = std::move(access);
  if (structure) {
    doc["coalitions"] = structure->coalitions();
    doc["coalition_mode"] = structure->is_partition() ? "partition" : "family";
  }
  return doc.dump(2) + "\n";
}

std::string emit_allocation(const Allocation& a) {
  json doc;
  doc["assignment"] = a.assignment();
  return doc.dump(2) + "\n";
}

bool Report::all_requested_true() const {
  for (const auto& flag : {nash, pareto, partition_stable, super_strong})
    if (flag.has_value() && !*flag) return false;
  return true;
}

std::string emit_report(const Instance& inst, const Report& report) {
  json doc;
  doc["version"] = kToolVersion;
  doc["command"] = report.command;
  doc["seed"] = report.seed;
  doc["timing_ms"] = report.timing_ms;
  doc["agents"] = inst.agent_count();
  doc["resources"] = inst.resource_count();
  doc["allocation"] = report.allocation.assignment();
  doc["feasible"] = report.feasible;

  json kernels;
  kernels["k"] = kernel(report.allocation).entries;
  if (report.structure) {
    kernels["coalition_mode"] = report.structure->is_partition() ? "partition" : "family";
    json per = json::array();
    for (const Coalition& c : report.structure->coalitions()) {
      json entry;
      entry["members"] = c;
      entry["k"] = coalition_kernel(report.allocation, c).entries;
      entry["w"] = welfare_kernel(report.allocation, c).entries;
      per.push_back(std::move(entry));
    }
    kernels["coalitions"] = std::move(per);
  }
  doc["kernels"] = std::move(kernels);

  auto flag = [](const std::optional<bool>& v) { return v ? json(*v) : json(nullptr); };
  doc["stability"] = {{"nash", flag(report.nash)},
                      {"pareto", flag(report.pareto)},
                      {"partition_stable", flag(report.partition_stable)},
                      {"super_strong", flag(report.super_strong)}};

  json witnesses;
  witnesses["nash"] = report.nash_witness ? witness_to_json(*report.nash_witness) : json(nullptr);
  witnesses["pareto"] =
      report.pareto_witness ? witness_to_json(*report.pareto_witness) : json(nullptr);
  if (report.partition_witness) {
    json w = witness_to_json(*report.partition_witness);
    if (report.partition_witness_coalition)
      w["coalition_index"] = *report.partition_witness_coalition;
    witnesses["partition"] = std::move(w);
  } else {
    witnesses["partition"] = nullptr;
  }
  witnesses["super_strong"] = report.super_strong_witness
                                  ? witness_to_json(*report.super_strong_witness)
                                  : json(nullptr);
  doc["witnesses"] = std::move(witnesses);

  if (report.solve_mode) {
    doc["solver"] = {{"mode", *report.solve_mode},
                     {"chain_limit", report.chain_limit.value_or(0)},
                     {"fallback_used", report.fallback_used.value_or(false)}};
  }
  return doc.dump(2) + "\n";
}

Report parse_report_text(const Instance& inst, const std::string& text) {
  json doc = parse_text(text, "report");
  reject_unknown(doc,
                 {"version", "command", "seed", "timing_ms", "agents", "resources",
                  "allocation", "feasible", "kernels", "stability", "witnesses", "solver"},
                 "report");
  Report report;
  report.command = field(doc, "command", "report").get<std::string>();
  report.seed = field(doc, "seed", "report").get<std::uint64_t>();
  report.timing_ms = field(doc, "timing_ms", "report").get<double>();
  if (as_int(field(doc, "agents", "report"), "report.agents") != inst.agent_count() ||
      as_int(field(doc, "resources", "report"), "report.resources") != inst.resource_count())
    bad("report: instance shape mismatch");
  report.allocation = validate_allocation(
      inst, as_int_array(field(doc, "allocation", "report"), "report.allocation"));
  report.feasible = field(doc, "feasible", "report").get<bool>();

  const json& kernels = field(doc, "kernels", "report");
  reject_unknown(kernels, {"k", "coalition_mode", "coalitions"}, "report.kernels");
  if (kernels.contains("coalitions")) {
    std::string mode = kernels.value("coalition_mode", "partition");
    std::vector<Coalition> cs;
    for (const auto& entry : kernels["coalitions"]) {
      reject_unknown(entry, {"members", "k", "w"}, "report.kernels.coalitions");
      cs.push_back(as_int_array(field(entry, "members", "report"), "report.members"));
    }
    report.structure = structure_from_json(
        inst.agent_count(), json(cs), mode, "report.kernels.coalitions");
  }

  const json& stability = field(doc, "stability", "report");
  reject_unknown(stability, {"nash", "pareto", "partition_stable", "super_strong"},
                 "report.stability");
  auto flag = [&](const char* key) -> std::optional<bool> {
    const json& v = field(stability, key, "report.stability");
    if (v.is_null()) return std::nullopt;
    return v.get<bool>();
  };
  report.nash = flag("nash");
  report.pareto = flag("pareto");
  report.partition_stable = flag("partition_stable");
  report.super_strong = flag("super_strong");

  const json& witnesses = field(doc, "witnesses", "report");
  reject_unknown(witnesses, {"nash", "pareto", "partition", "super_strong"},
                 "report.witnesses");
  auto witness = [&](const char* key) -> std::optional<BlockingWitness> {
    const json& v = field(witnesses, key, "report.witnesses");
    if (v.is_null()) return std::nullopt;
    return witness_from_json(inst, report.allocation, v, "report.witnesses");
  };
  report.nash_witness = witness("nash");
  report.pareto_witness = witness("pareto");
  report.partition_witness = witness("partition");
  if (report.partition_witness && witnesses["partition"].contains("coalition_index"))
    report.partition_witness_coalition =
        witnesses["partition"]["coalition_index"].get<std::size_t>();
  report.super_strong_witness = witness("super_strong");

  if (doc.contains("solver")) {
    const json& solver = doc["solver"];
    reject_unknown(solver, {"mode", "chain_limit", "fallback_used"}, "report.solver");
    report.solve_mode = field(solver, "mode", "report.solver").get<std::string>();
    report.chain_limit = as_int(field(solver, "chain_limit", "report.solver"), "report.solver");
    report.fallback_used = field(solver, "fallback_used", "report.solver").get<bool>();
  }
  return report;
}

std::string emit_dynamics(const Instance& inst, const DynamicsTrace& trace,
                          const std::string& policy, int max_steps,
                          std::uint64_t seed, double timing_ms) {
  json doc;
  doc["version"] = kToolVersion;
  doc["command"] = "dynamics";
  doc["seed"] = seed;
  doc["timing_ms"] = timing_ms;
  doc["agents"] = inst.agent_count();
  doc["resources"] = inst.resource_count();
  doc["policy"] = policy;
  doc["max_steps"] = max_steps;
  doc["start"] = trace.start.assignment();
  json steps = json::array();
  for (const DynamicsStep& step : trace.steps) {
    json entry;
    entry["coalition_index"] = step.coalition_index;
    entry["coalition"] = step.coalition;
    entry["induced"] = step.induced.assignment();
    steps.push_back(std::move(entry));
  }
  doc["steps"] = std::move(steps);
  switch (trace.terminal) {
    case DynamicsTerminal::stable: doc["terminal"] = "stable"; break;
    case DynamicsTerminal::cycle: doc["terminal"] = "cycle"; break;
    case DynamicsTerminal::step_limit: doc["terminal"] = "step-limit"; break;
  }
  doc["cycle_start"] = trace.cycle_start ? json(*trace.cycle_start) : json(nullptr);
  return doc.dump(2) + "\n";
}

DynamicsTrace parse_dynamics_text(const Instance& inst, const std::string& text) {
  json doc = parse_text(text, "dynamics");
  reject_unknown(doc,
                 {"version", "command", "seed", "timing_ms", "agents", "resources",
                  "policy", "max_steps", "start", "steps", "terminal", "cycle_start"},
                 "dynamics");
  DynamicsTrace trace;
  trace.start = validate_allocation(
      inst, as_int_array(field(doc, "start", "dynamics"), "dynamics.start"));
  Allocation current = trace.start;
  for (const auto& entry : field(doc, "steps", "dynamics")) {
    reject_unknown(entry, {"coalition_index", "coalition", "induced"}, "dynamics.steps");
    DynamicsStep step;
    step.from = current;
    step.coalition_index = field(entry, "coalition_index", "dynamics").get<std::size_t>();
    step.coalition = make_coalition(
        inst.agent_count(), as_int_array(field(entry, "coalition", "dynamics"), "dynamics"));
    step.induced = validate_allocation(
        inst, as_int_array(field(entry, "induced", "dynamics"), "dynamics.induced"));
    current = step.induced;
    trace.steps.push_back(std::move(step));
  }
  std::string terminal = field(doc, "terminal", "dynamics").get<std::string>();
  if (terminal == "stable") {
    trace.terminal = DynamicsTerminal::stable;
  } else if (terminal == "cycle") {
    trace.terminal = DynamicsTerminal::cycle;
  } else if (terminal == "step-limit") {
    trace.terminal = DynamicsTerminal::step_limit;
  } else {
    bad("dynamics.terminal: unknown value \"" + terminal + "\"");
  }
  if (!field(doc, "cycle_start", "dynamics").is_null())
    trace.cycle_start = doc["cycle_start"].get<std::size_t>();
  return trace;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot open \"" + path + "\" for writing");
  out << text;
  if (!out.good()) bad("failed writing \"" + path + "\"");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad("cannot open \"" + path + "\"");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

long long enum_bound_from_env() {
  const char* raw = std::getenv("ISCG_ENUM_BOUND");
  if (raw == nullptr || *raw == '\0') return Bounds{}.enum_bound;
  char* end = nullptr;
  long long value = std::strtoll(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 1)
    bad("ISCG_ENUM_BOUND must be a positive integer");
  return value;
}

}  // namespace iscg::io
