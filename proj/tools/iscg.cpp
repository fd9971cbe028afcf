#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "iscg/enumerate.hpp"
#include "iscg/io.hpp"
#include "iscg/parallel.hpp"
#include "iscg/solver.hpp"
#include "iscg/verify.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

struct CheckArgs {
  std::string instance_path;
  std::string allocation_path;
  bool nash = false;
  bool pareto = false;
  bool partition = false;
  bool super_strong = false;
  std::string out_path;
};

int run_check(const CheckArgs& args, const iscg::Bounds& bounds) {
  auto started = Clock::now();
  iscg::io::InstanceFile file = iscg::io::load_instance(args.instance_path);
  const iscg::Instance& inst = file.inst;
  iscg::Allocation a = iscg::io::load_allocation(args.allocation_path, inst);

  bool nash = args.nash, pareto = args.pareto, partition = args.partition;
  if (!nash && !pareto && !partition && !args.super_strong) {
    nash = pareto = true;
    partition = file.structure.has_value();
  }
  if (partition && !file.structure)
    throw iscg::Error(iscg::Errc::parse_error,
                      "--partition requires a coalition structure in the instance file");

  iscg::io::Report report;
  report.command = "check";
  report.allocation = a;
  report.feasible = iscg::is_feasible(inst, a);
  report.structure = file.structure;

  if (nash) {
    auto [ok, w] = iscg::is_nash(inst, a);
    report.nash = ok;
    report.nash_witness = std::move(w);
  }
  if (pareto) {
    auto [ok, w] = iscg::is_pareto(inst, a, bounds);
    report.pareto = ok;
    report.pareto_witness = std::move(w);
  }
  if (partition) {
    auto res = iscg::is_c_stable(inst, a, *file.structure, bounds);
    report.partition_stable = res.stable;
    report.partition_witness = std::move(res.witness);
    report.partition_witness_coalition = res.coalition_index;
  }
  if (args.super_strong) {
    auto [ok, w] = iscg::is_super_strong(inst, a, bounds);
    report.super_strong = ok;
    report.super_strong_witness = std::move(w);
  }

  auto show = [](const char* name, const std::optional<bool>& v) {
    if (v) std::cout << name << ": " << (*v ? "true" : "false") << "\n";
  };
  show("nash", report.nash);
  show("pareto", report.pareto);
  show("partition_stable", report.partition_stable);
  show("super_strong", report.super_strong);

  report.timing_ms = elapsed_ms(started);
  if (!args.out_path.empty())
    iscg::io::write_file(args.out_path, iscg::io::emit_report(inst, report));
  std::cerr << "timing: " << report.timing_ms << " ms\n";
  return report.all_requested_true() ? 0 : 1;
}

struct SolveArgs {
  std::string instance_path;
  std::string mode = "exact";
  int chain_limit = 0;
  std::string out_path;
};

int run_solve(const SolveArgs& args, const iscg::Bounds& bounds) {
  auto started = Clock::now();
  iscg::io::InstanceFile file = iscg::io::load_instance(args.instance_path);
  if (!file.structure || !file.structure->is_partition())
    throw iscg::Error(iscg::Errc::parse_error,
                      "solve requires a partition coalition structure in the instance file");

  iscg::SolveOptions options;
  options.mode = args.mode == "heuristic" ? iscg::SolveMode::heuristic
                                          : iscg::SolveMode::exact;
  options.chain_limit = args.chain_limit;
  options.bounds = bounds;
  iscg::SolveResult result = iscg::find_stable(file.inst, *file.structure, options);

  iscg::io::Report report;
  report.command = "solve";
  report.allocation = result.allocation;
  report.feasible = true;
  report.structure = file.structure;
  report.nash = result.report.nash;
  report.pareto = result.report.pareto;
  report.partition_stable = result.report.partition_stable;
  report.solve_mode = args.mode;
  report.chain_limit =
      options.chain_limit > 0 ? options.chain_limit : file.inst.resource_count();
  report.fallback_used = result.fallback_used;

  std::cout << "allocation: " << result.allocation.to_string() << "\n";
  std::cout << "kernel:";
  for (int entry : iscg::kernel(result.allocation).entries) std::cout << ' ' << entry;
  std::cout << "\ncertified: nash pareto partition_stable\n";

  report.timing_ms = elapsed_ms(started);
  if (!args.out_path.empty())
    iscg::io::write_file(args.out_path, iscg::io::emit_report(file.inst, report));
  std::cerr << "timing: " << report.timing_ms << " ms\n";
  return 0;
}

struct DynamicsArgs {
  std::string instance_path;
  std::string start_path;
  bool random_start = false;
  std::uint64_t seed = 0;
  std::string policy = "canonical";
  int max_steps = 100;
  std::string out_path;
};

int run_dynamics_cmd(const DynamicsArgs& args, const iscg::Bounds& bounds) {
  auto started = Clock::now();
  iscg::io::InstanceFile file = iscg::io::load_instance(args.instance_path);
  if (!file.structure)
    throw iscg::Error(iscg::Errc::parse_error,
                      "dynamics requires a coalition structure in the instance file");
  if (args.start_path.empty() && !args.random_start)
    throw iscg::Error(iscg::Errc::parse_error,
                      "give --start <allocation.json> or --random-start");

  iscg::Allocation start;
  if (args.random_start) {
    iscg::verify::Rng rng(iscg::verify::mix_seed(args.seed, 0));
    start = iscg::verify::random_feasible(file.inst, rng);
  } else {
    start = iscg::io::load_allocation(args.start_path, file.inst);
  }

  iscg::DynamicsTrace trace =
      iscg::run_dynamics(file.inst, *file.structure, start,
                         iscg::DynamicsPolicy::canonical, args.max_steps, bounds);

  const char* terminal = trace.terminal == iscg::DynamicsTerminal::stable ? "stable"
                         : trace.terminal == iscg::DynamicsTerminal::cycle ? "cycle"
                                                                           : "step-limit";
  std::cout << "terminal: " << terminal << " after " << trace.steps.size() << " steps\n";
  if (trace.cycle_start) std::cout << "cycle_start: " << *trace.cycle_start << "\n";

  double timing = elapsed_ms(started);
  if (!args.out_path.empty())
    iscg::io::write_file(args.out_path, iscg::io::emit_dynamics(file.inst, trace,
                                                                args.policy, args.max_steps,
                                                                args.seed, timing));
  std::cerr << "timing: " << timing << " ms\n";
  return trace.terminal == iscg::DynamicsTerminal::stable ? 0 : 1;
}

struct VerifyArgs {
  std::string suite = "all";
  std::uint64_t seed = 1;
  long long cases = 0;
  int threads = iscg::default_thread_count();
};

int run_verify(const VerifyArgs& args) {
  namespace v = iscg::verify;
  auto started = Clock::now();
  bool lemmas = args.suite == "lemmas" || args.suite == "all";
  bool theorem = args.suite == "theorem" || args.suite == "all";
  bool examples = args.suite == "examples" || args.suite == "all";
  bool extended = args.suite == "all";
  if (!lemmas && !theorem && !examples)
    throw iscg::Error(iscg::Errc::parse_error,
                      "--suite must be lemmas, theorem, examples, or all");

  v::SuiteOptions opts{args.seed, args.cases, args.threads};
  bool ok = true;

  auto show = [&](const v::SuiteReport& report) {
    std::cout << report.name << ": " << report.cases << " cases, " << report.failures
              << " failures";
    if (report.rejected > 0) std::cout << " (rejected " << report.rejected << ")";
    std::cout << "\n";
    for (const std::string& message : report.failure_messages)
      std::cout << "  counterexample: " << message << "\n";
    ok = ok && report.ok();
  };

  if (examples) {
    for (const v::ExampleResult& result : v::reproduce_examples()) {
      std::cout << result.name << ": " << (result.passed ? "pass" : "FAIL") << "\n";
      for (const std::string& what : result.failures) std::cout << "  " << what << "\n";
      ok = ok && result.passed;
    }
  }
  if (lemmas) {
    show(v::run_swap_invariance_suite(opts));
    show(v::run_single_move_suite(opts));
    show(v::run_blocking_welfare_suite(opts));
    show(v::run_stratum_bounds_suite(opts));
  }
  if (theorem) show(v::run_maximal_stability_suite(opts));
  if (extended) {
    show(v::run_solver_certification_suite(opts));
    show(v::run_reduction_suite(opts));
  }

  std::cout << (ok ? "all suites passed" : "FAILURES detected") << "\n";
  std::cerr << "timing: " << elapsed_ms(started) << " ms\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solver and verification toolkit for identical singleton congestion games"};
  app.require_subcommand(1);

  CheckArgs check_args;
  CLI::App* check = app.add_subcommand("check", "evaluate stability of an allocation");
  check->add_option("instance", check_args.instance_path, "instance JSON file")->required();
  check->add_option("allocation", check_args.allocation_path, "allocation JSON file")
      ->required();
  check->add_flag("--nash", check_args.nash, "check resilience to singleton deviations");
  check->add_flag("--pareto", check_args.pareto, "check resilience to the grand coalition");
  check->add_flag("--partition", check_args.partition,
                  "check resilience to the file's coalition structure");
  check->add_flag("--super-strong", check_args.super_strong,
                  "check resilience to every nonempty coalition");
  check->add_option("--out", check_args.out_path, "write a JSON report here");

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "find a certified stable allocation");
  solve->add_option("instance", solve_args.instance_path, "instance JSON file")->required();
  solve->add_option("--mode", solve_args.mode, "exact or heuristic")
      ->check(CLI::IsMember({"exact", "heuristic"}));
  solve->add_option("--chain-limit", solve_args.chain_limit,
                    "max chain length for the heuristic ascent (default: resource count)");
  solve->add_option("--out", solve_args.out_path, "write a JSON report here");

  VerifyArgs verify_args;
  CLI::App* verify = app.add_subcommand("verify", "run the property and regression suites");
  verify->add_option("--suite", verify_args.suite, "lemmas, theorem, examples, or all");
  verify->add_option("--seed", verify_args.seed, "base seed for the sampled suites");
  verify->add_option("--cases", verify_args.cases, "override per-suite case counts");
  verify->add_option("--threads", verify_args.threads, "worker threads for sampled suites");

  DynamicsArgs dynamics_args;
  CLI::App* dynamics = app.add_subcommand("dynamics", "run blocking-deviation dynamics");
  dynamics->add_option("instance", dynamics_args.instance_path, "instance JSON file")
      ->required();
  dynamics->add_option("--start", dynamics_args.start_path, "starting allocation JSON file");
  dynamics->add_flag("--random-start", dynamics_args.random_start,
                     "start from a seeded random feasible allocation");
  dynamics->add_option("--seed", dynamics_args.seed, "seed for --random-start");
  dynamics->add_option("--policy", dynamics_args.policy, "deviation selection policy")
      ->check(CLI::IsMember({"canonical"}));
  dynamics->add_option("--max-steps", dynamics_args.max_steps, "step limit");
  dynamics->add_option("--out", dynamics_args.out_path, "write the trace JSON here");

  CLI::App* examples_cmd =
      app.add_subcommand("examples", "run the bundled regression examples");

  int threads_unused = 0;  // accepted on every subcommand for interface stability
  for (CLI::App* sub : {check, solve, dynamics})
    sub->add_option("--threads", threads_unused, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    iscg::Bounds bounds;
    bounds.enum_bound = iscg::io::enum_bound_from_env();
    if (check->parsed()) return run_check(check_args, bounds);
    if (solve->parsed()) return run_solve(solve_args, bounds);
    if (dynamics->parsed()) return run_dynamics_cmd(dynamics_args, bounds);
    if (examples_cmd->parsed()) {
      VerifyArgs alias;
      alias.suite = "examples";
      return run_verify(alias);
    }
    return run_verify(verify_args);
  } catch (const iscg::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_bound_error() ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
